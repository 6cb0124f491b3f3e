"""
Aggregation of run records into the comparison table.

Every summary statistic is recomputed from the per-run records.
"""

from typing import Dict, List, Sequence, Tuple

from batch.models import ComparisonRow, RunRecord, SummaryRow
from evaluation.statistics import Alternative, descriptive, mann_whitney
from features.archive import nfshc

GroupKey = Tuple[str, str]


def group_runs(records: Sequence[RunRecord]) -> Dict[GroupKey, List[RunRecord]]:
    """Records grouped by (method, model), in first-seen order."""
    groups: Dict[GroupKey, List[RunRecord]] = {}
    for r in records:
        groups.setdefault((r.method, r.model_kind), []).append(r)
    return groups


def summarize(records: Sequence[RunRecord]) -> List[SummaryRow]:
    """
    One row per method x model, sorted by mean coverage (descending), then method name.

    NFSHC normalizes each row's mean coverage by the best mean in the table.
    """
    rows = [descriptive(group) for group in group_runs(records).values()]
    means = [row.mean_fshc for row in rows]
    normalized = nfshc(means) if means and max(means) > 0 else [0.0] * len(means)

    summary = [
        SummaryRow(
            method=row.method,
            model_kind=row.model_kind,
            runs=row.runs,
            coverage=row.mean_fshc,
            std=row.std_fshc,
            nfshc=norm,
            time_s=row.mean_wall_time,
            preferred=row.mean_preferred_pct,
            infeasible=row.mean_infeasible_pct,
        )
        for row, norm in zip(rows, normalized)
    ]
    summary.sort(key=lambda s: (-s.coverage, s.method, s.model_kind))
    return summary


def compare_rows(records: Sequence[RunRecord], summary: Sequence[SummaryRow]) -> List[ComparisonRow]:
    """Pairwise one-sided tests that row A's coverage values exceed row B's."""
    groups = group_runs(records)
    comparisons = []
    for a in summary:
        for b in summary:
            if a is b:
                continue
            result = mann_whitney(
                [r.fshc for r in groups[(a.method, a.model_kind)]],
                [r.fshc for r in groups[(b.method, b.model_kind)]],
                Alternative.GREATER,
            )
            comparisons.append(
                ComparisonRow(
                    method_a=a.method,
                    model_a=a.model_kind,
                    method_b=b.method,
                    model_b=b.model_kind,
                    u_statistic=result.u_statistic,
                    p_value=result.p_value,
                    test_method=result.method.value,
                )
            )
    return comparisons
