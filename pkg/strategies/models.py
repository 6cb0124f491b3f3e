from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Tuple

import pandas as pd

from choice_models.models import ModelKind
from features.archive import DensityArchive
from features.space import SampleStatus

SAMPLE_LOG_COLUMNS = ["attempt", "method", "status", "length", "num_digits", "fshc_so_far", "elapsed_s"]


@dataclass(frozen=True)
class SampleRecord:
    """
    One generation attempt as logged by a search.

    length and num_digits are None for INFEASIBLE attempts and for NMCS
    rollouts cut off at the cube's length bound (logged OUTSIDE).
    """
    attempt: int
    status: SampleStatus
    length: Optional[int]
    num_digits: Optional[int]
    fshc_so_far: float
    elapsed_s: float

    @property
    def feasible(self) -> bool:
        return self.status is not SampleStatus.INFEASIBLE


@dataclass
class RunResult:
    """
    Outcome of one strategy run.

    feasible_preferred + feasible_outside + infeasible equals the number of
    attempts consumed.
    """
    method: str
    model_kind: ModelKind
    seed: int
    budget: int
    fshc: float
    wall_time: float
    feasible_preferred: int
    feasible_outside: int
    infeasible: int
    parameter_draws: int
    sample_log: List[SampleRecord]
    archive: DensityArchive
    final_attempts: List[int] = field(default_factory=list)

    @property
    def attempts(self) -> int:
        return self.feasible_preferred + self.feasible_outside + self.infeasible

    @property
    def covered_cells(self) -> FrozenSet[Tuple[int, int]]:
        return self.archive.covered

    @property
    def preferred_ratio(self) -> float:
        """Percentage of all attempts that landed inside the hypercube."""
        return 100.0 * self.feasible_preferred / self.attempts if self.attempts else 0.0

    @property
    def infeasible_ratio(self) -> float:
        return 100.0 * self.infeasible / self.attempts if self.attempts else 0.0

    def log_frame(self) -> pd.DataFrame:
        """Sample log in the column order of the per-sample CSV."""
        return pd.DataFrame(
            [
                {
                    "attempt": r.attempt,
                    "method": self.method,
                    "status": r.status.value,
                    "length": r.length,
                    "num_digits": r.num_digits,
                    "fshc_so_far": r.fshc_so_far,
                    "elapsed_s": r.elapsed_s,
                }
                for r in self.sample_log
            ],
            columns=SAMPLE_LOG_COLUMNS,
        ).astype({"length": "Int64", "num_digits": "Int64"})
