"""
Plot-ready CSV exports.

Comma-separated, '.' decimal, header row, UTF-8, LF line endings.
"""

from pathlib import Path
from typing import Sequence

import pandas as pd

from strategies.models import RunResult

TIMESERIES_COLUMNS = ["method", "model", "fshc", "wall_time_s", "infeasible_pct", "preferred_pct"]


def write_csv(frame: pd.DataFrame, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, lineterminator="\n", encoding="utf-8")
    return path


def export_scatter(run: RunResult, path: str | Path) -> Path:
    """
    (length, num_digits) of every complete feasible datum of a run.

    The first line is a comment carrying the cube bounds; INFEASIBLE attempts
    and cut-off rollouts have no features and are left out.
    """
    cube = run.archive.cube
    points = pd.DataFrame(
        [(r.length, r.num_digits) for r in run.sample_log if r.length is not None],
        columns=["length", "num_digits"],
    )
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(
            f"# cube length={cube.length_range[0]}:{cube.length_range[1]} "
            f"digits={cube.digits_range[0]}:{cube.digits_range[1]}\n"
        )
        points.to_csv(f, index=False, lineterminator="\n")
    return path


def read_scatter(path: str | Path) -> pd.DataFrame:
    return pd.read_csv(path, comment="#")


def export_timeseries(runs: Sequence[RunResult], path: str | Path) -> Path:
    """
    One row per run: coverage, time, infeasible and preferred percentages.

    Raises:
        ValueError: If `runs` is empty
    """
    if len(runs) == 0:
        raise ValueError("No runs to export")
    frame = pd.DataFrame(
        [
            {
                "method": r.method,
                "model": getattr(r.model_kind, "value", r.model_kind),
                "fshc": r.fshc,
                "wall_time_s": r.wall_time,
                "infeasible_pct": r.infeasible_ratio,
                "preferred_pct": r.preferred_ratio,
            }
            for r in runs
        ],
        columns=TIMESERIES_COLUMNS,
    )
    return write_csv(frame, path)


def export_sample_log(run: RunResult, path: str | Path) -> Path:
    return write_csv(run.log_frame(), path)
