"""
Nonparametric statistics.

Mann-Whitney U with exact small-sample p-values (also under ties, by
enumerating labellings of the observed mid-ranks) and a tie-corrected normal
approximation for larger samples, plus descriptive rows for result tables.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence

import numpy as np
from scipy.stats import norm, rankdata

EXACT_MAX_SAMPLE = 8
_TOLERANCE = 1e-9


class Alternative(str, Enum):
    LESS = "less"
    GREATER = "greater"
    TWO_SIDED = "two-sided"


class UTestMethod(str, Enum):
    EXACT = "exact"
    NORMAL_APPROX = "normal-approx-tie-corrected"


@dataclass(frozen=True)
class UTestResult:
    """U is the statistic of the first sample: pairs (x, y) with x > y, ties counted 1/2."""
    u_statistic: float
    p_value: float
    method: UTestMethod
    alternative: Alternative


@lru_cache(maxsize=64)
def _labellings(n1: int, n2: int) -> np.ndarray:
    return np.array(list(combinations(range(n1 + n2), n1)), dtype=np.int64)


def _exact_tails(ranks: np.ndarray, n1: int, n2: int, u: float) -> tuple[float, float]:
    sums = ranks[_labellings(n1, n2)].sum(axis=1)
    u_null = sums - n1 * (n1 + 1) / 2.0
    total = len(u_null)
    p_less = np.count_nonzero(u_null <= u + _TOLERANCE) / total
    p_greater = np.count_nonzero(u_null >= u - _TOLERANCE) / total
    return float(p_less), float(p_greater)


def _normal_tails(ranks: np.ndarray, n1: int, n2: int, u: float) -> tuple[float, float]:
    n = n1 + n2
    mu = n1 * n2 / 2.0
    _, tie_sizes = np.unique(ranks, return_counts=True)
    tie_term = float(np.sum(tie_sizes ** 3 - tie_sizes)) / (n * (n - 1)) if n > 1 else 0.0
    variance = n1 * n2 / 12.0 * ((n + 1) - tie_term)
    if variance <= 0:
        return 1.0, 1.0
    sigma = np.sqrt(variance)
    p_less = norm.cdf((u - mu + 0.5) / sigma)
    p_greater = norm.sf((u - mu - 0.5) / sigma)
    return float(min(1.0, p_less)), float(min(1.0, p_greater))


def mann_whitney(
    a: Sequence[float],
    b: Sequence[float],
    alternative: Alternative | str = Alternative.TWO_SIDED,
    method: Optional[UTestMethod] = None,
) -> UTestResult:
    """
    Mann-Whitney U test of sample `a` against sample `b`.

    One-sided "less" asks whether `a` tends to be smaller than `b`, with
    p = P(U <= u_observed) under the null; "greater" is the mirror image.

    Args:
        a: First sample
        b: Second sample
        alternative: less, greater or two-sided
        method: Force exact or approximate p-values; by default exact when
            both samples have at most 8 elements

    Returns:
        UTestResult with U of the first sample

    Raises:
        ValueError: If either sample is empty
    """
    alternative = Alternative(alternative)
    x = np.asarray(a, dtype=np.float64)
    y = np.asarray(b, dtype=np.float64)
    if x.size == 0 or y.size == 0:
        raise ValueError("Mann-Whitney U needs two non-empty samples")

    n1, n2 = x.size, y.size
    ranks = rankdata(np.concatenate([x, y]))
    u = float(ranks[:n1].sum() - n1 * (n1 + 1) / 2.0)

    if method is None:
        exact = n1 <= EXACT_MAX_SAMPLE and n2 <= EXACT_MAX_SAMPLE
        method = UTestMethod.EXACT if exact else UTestMethod.NORMAL_APPROX
    if method is UTestMethod.EXACT:
        p_less, p_greater = _exact_tails(ranks, n1, n2, u)
    else:
        p_less, p_greater = _normal_tails(ranks, n1, n2, u)

    if alternative is Alternative.LESS:
        p = p_less
    elif alternative is Alternative.GREATER:
        p = p_greater
    else:
        p = min(1.0, 2.0 * min(p_less, p_greater))
    return UTestResult(u_statistic=u, p_value=p, method=method, alternative=alternative)


@dataclass(frozen=True)
class DescriptiveRow:
    """Aggregate of several runs of one method x model combination."""
    method: str
    model_kind: str
    runs: int
    mean_fshc: float
    std_fshc: float
    mean_wall_time: float
    mean_preferred_pct: float
    mean_infeasible_pct: float


def descriptive(results: Sequence) -> DescriptiveRow:
    """
    Mean and sample standard deviation of coverage over runs.

    A single run reports a standard deviation of 0.

    Raises:
        ValueError: If `results` is empty
    """
    if len(results) == 0:
        raise ValueError("Cannot describe an empty list of runs")
    fshc = np.array([r.fshc for r in results], dtype=np.float64)
    std = float(np.std(fshc, ddof=1)) if fshc.size > 1 else 0.0
    first = results[0]
    return DescriptiveRow(
        method=first.method,
        model_kind=str(getattr(first.model_kind, "value", first.model_kind)),
        runs=len(results),
        mean_fshc=float(np.mean(fshc)),
        std_fshc=std,
        mean_wall_time=float(np.mean([r.wall_time for r in results])),
        mean_preferred_pct=float(np.mean([r.preferred_ratio for r in results])),
        mean_infeasible_pct=float(np.mean([r.infeasible_ratio for r in results])),
    )
