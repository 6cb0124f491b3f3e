from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List

from strategies.models import RunResult


@dataclass(frozen=True)
class RunRecord:
    """
    Per-run row of the report; the summary is recomputable from these.
    """
    method: str
    model_kind: str
    method_index: int
    repetition: int
    seed: int
    budget: int
    fshc: float
    covered_cells: int
    wall_time_s: float
    attempts: int
    feasible_preferred: int
    feasible_outside: int
    infeasible: int
    preferred_pct: float
    infeasible_pct: float
    parameter_draws: int

    @classmethod
    def from_result(cls, result: RunResult, method_index: int, repetition: int) -> "RunRecord":
        return cls(
            method=result.method,
            model_kind=result.model_kind.value,
            method_index=method_index,
            repetition=repetition,
            seed=result.seed,
            budget=result.budget,
            fshc=result.fshc,
            covered_cells=len(result.covered_cells),
            wall_time_s=result.wall_time,
            attempts=result.attempts,
            feasible_preferred=result.feasible_preferred,
            feasible_outside=result.feasible_outside,
            infeasible=result.infeasible,
            preferred_pct=result.preferred_ratio,
            infeasible_pct=result.infeasible_ratio,
            parameter_draws=result.parameter_draws,
        )

    # aliases so records can be described like RunResults
    @property
    def wall_time(self) -> float:
        return self.wall_time_s

    @property
    def preferred_ratio(self) -> float:
        return self.preferred_pct

    @property
    def infeasible_ratio(self) -> float:
        return self.infeasible_pct


@dataclass(frozen=True)
class SummaryRow:
    """One method x model row of the comparison table."""
    method: str
    model_kind: str
    runs: int
    coverage: float
    std: float
    nfshc: float
    time_s: float
    preferred: float
    infeasible: float


@dataclass(frozen=True)
class ComparisonRow:
    """One-sided Mann-Whitney p-value that row A's coverage exceeds row B's."""
    method_a: str
    model_a: str
    method_b: str
    model_b: str
    u_statistic: float
    p_value: float
    test_method: str


@dataclass
class ExperimentReport:
    config_hash: str
    master_seed: int
    tool_version: str
    summary: List[SummaryRow]
    runs: List[RunRecord]
    comparisons: List[ComparisonRow] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "provenance": {
                "config_hash": self.config_hash,
                "master_seed": self.master_seed,
                "tool_version": self.tool_version,
                "run_seeds": [
                    {"method": r.method, "model": r.model_kind, "repetition": r.repetition, "seed": r.seed}
                    for r in self.runs
                ],
            },
            "summary": [asdict(s) for s in self.summary],
            "runs": [asdict(r) for r in self.runs],
            "comparisons": [asdict(c) for c in self.comparisons],
        }
