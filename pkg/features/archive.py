"""
Density archive over the preference hypercube.

Counts recorded data per cell. Counts are the novelty signal used by the
density-guided searches (lower count = more novel) and the source of the
coverage metrics.
"""

from pathlib import Path
from typing import FrozenSet, List, Sequence, Tuple

import numpy as np
import pandas as pd

from features.space import FeatureVector, PreferenceHypercube


class OutsideHypercubeError(ValueError):
    """Raised when a feature vector outside the cube is recorded."""


class DensityArchive:
    """
    Per-cell counts of PREFERRED data.

    Single writer per run. OUTSIDE data never enter the archive.
    """

    def __init__(self, cube: PreferenceHypercube):
        self._cube = cube
        self._counts = np.zeros(cube.shape, dtype=np.int64)
        self._total_recorded = 0
        self._covered = 0

    @property
    def cube(self) -> PreferenceHypercube:
        return self._cube

    @property
    def total_recorded(self) -> int:
        return self._total_recorded

    @property
    def covered_count(self) -> int:
        return self._covered

    @property
    def covered(self) -> FrozenSet[Tuple[int, int]]:
        rows, cols = np.nonzero(self._counts)
        len_lo, dig_lo = self._cube.length_range[0], self._cube.digits_range[0]
        return frozenset(
            (int(r) + len_lo, int(c) + dig_lo) for r, c in zip(rows, cols)
        )

    def record(self, fv: FeatureVector) -> int:
        """
        Record one PREFERRED feature vector.

        Returns:
            The cell's count after recording

        Raises:
            OutsideHypercubeError: If fv lies outside the cube
        """
        if not self._cube.contains(fv):
            raise OutsideHypercubeError(
                f"Cannot record ({fv.length}, {fv.num_digits}) outside cube {self._cube.label()}"
            )
        idx = self._cube.index_of(fv)
        self._counts[idx] += 1
        count = int(self._counts[idx])
        if count == 1:
            self._covered += 1
        self._total_recorded += 1
        return count

    def count(self, fv: FeatureVector) -> int:
        """Count of fv's cell; 0 for cells outside the cube."""
        if not self._cube.contains(fv):
            return 0
        return int(self._counts[self._cube.index_of(fv)])

    def fshc(self) -> float:
        return fshc(self, self._cube)

    def copy(self) -> "DensityArchive":
        clone = DensityArchive(self._cube)
        clone._counts = self._counts.copy()
        clone._total_recorded = self._total_recorded
        clone._covered = self._covered
        return clone

    def to_frame(self) -> pd.DataFrame:
        """Covered cells as rows (cell_length, cell_digits, count)."""
        rows, cols = np.nonzero(self._counts)
        return pd.DataFrame(
            {
                "cell_length": rows + self._cube.length_range[0],
                "cell_digits": cols + self._cube.digits_range[0],
                "count": self._counts[rows, cols],
            }
        )

    def to_csv(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.to_frame().to_csv(path, index=False, lineterminator="\n")
        return path


def record(archive: DensityArchive, fv: FeatureVector, cube: PreferenceHypercube) -> DensityArchive:
    """Record fv into archive (which must be built over `cube`)."""
    if archive.cube != cube:
        raise ValueError("Archive was built over a different hypercube")
    archive.record(fv)
    return archive


def fshc(archive: DensityArchive, cube: PreferenceHypercube) -> float:
    """Feature Space Hypercube Coverage: covered cells as a percentage of all cube cells."""
    return 100.0 * archive.covered_count / cube.cell_count


def nfshc(fshc_values: Sequence[float]) -> List[float]:
    """
    Normalize coverage values by the largest one.

    Raises:
        ValueError: If the list is empty or its maximum is not positive
    """
    if len(fshc_values) == 0:
        raise ValueError("Cannot normalize an empty list of FSHC values")
    best = max(fshc_values)
    if best <= 0:
        raise ValueError("Cannot normalize FSHC values whose maximum is zero")
    return [100.0 * v / best for v in fshc_values]
