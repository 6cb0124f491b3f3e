"""
Experiment CLI.

    run     full method x model x repetition grid (YAML config or the reference grid)
    gen     a single strategy run
    oracle  number of achievable cells of a preference hypercube

Log verbosity comes from FEATDIV_LOG_LEVEL (default INFO). Exit code 0 on
success, 1 on configuration or I/O errors.
"""

import argparse
import logging
import os
from pathlib import Path
from typing import List, Optional

from batch.experiment_config import ExperimentConfig
from batch.experiment_runner import run_experiment
from batch.exports import export_sample_log, export_scatter
from choice_models.models import ModelKind
from config.settings import get_settings
from engine.derivation import ResourceLimits
from features.oracle import max_achievable_cells
from features.space import PreferenceHypercube
from strategies.config import StrategyConfig
from strategies.registry import run_strategy

LOG_LEVEL_ENV = "FEATDIV_LOG_LEVEL"

logger = logging.getLogger(__name__)


def _configure_logging() -> None:
    level = os.environ.get(LOG_LEVEL_ENV, "INFO").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )


def _cube(text: Optional[str]) -> PreferenceHypercube:
    if text is None:
        settings = get_settings()
        return PreferenceHypercube(length_range=settings.length_range, digits_range=settings.digits_range)
    return PreferenceHypercube.parse(text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Feature-diversity test data search experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run a full experiment grid")
    run.add_argument("--config", help="YAML experiment file (default: reference grid)")
    run.add_argument("--repetitions", type=int, help="Override repetitions per method")
    run.add_argument("--budget", type=int, help="Override generation attempts per run")
    run.add_argument("--seed", type=int, help="Override master seed")
    run.add_argument("--workers", type=int, help="Worker processes")
    run.add_argument("--out", help="Output directory")

    gen = sub.add_parser("gen", help="Run a single strategy")
    gen.add_argument("--method", required=True, help="Method name (e.g. rand-freq1, nmcs-4-direct, hillclimb-4-20)")
    gen.add_argument("--model", default=ModelKind.DEFAULT.value, choices=[k.value for k in ModelKind])
    gen.add_argument("--budget", type=int, default=get_settings().budget)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--cube", help="LEN_LO:LEN_HI,DIG_LO:DIG_HI")
    gen.add_argument("--out", default=None, help="Output directory for sample log, scatter and archive")

    oracle = sub.add_parser("oracle", help="Count achievable cells of a cube")
    oracle.add_argument("--cube", help="LEN_LO:LEN_HI,DIG_LO:DIG_HI")
    return parser


def _run(args) -> int:
    overrides = {
        key: value
        for key, value in (
            ("repetitions", args.repetitions),
            ("budget", args.budget),
            ("master_seed", args.seed),
            ("workers", args.workers),
            ("output_directory", args.out),
        )
        if value is not None
    }
    if args.config:
        base = ExperimentConfig.load(args.config)
        config = ExperimentConfig.model_validate({**base.model_dump(), **overrides})
    else:
        config = ExperimentConfig.reference_grid(**overrides)

    report = run_experiment(config)

    print(f"\n{'Method':<22} {'Model':<10} {'Runs':>4} {'Coverage':>9} {'Std':>6} {'Time':>8} {'Preferred':>10}")
    print("-" * 75)
    for row in report.summary:
        print(
            f"{row.method:<22} {row.model_kind:<10} {row.runs:>4} {row.coverage:>9.1f} "
            f"{row.std:>6.1f} {row.time_s:>8.1f} {row.preferred:>10.1f}"
        )
    return 0


def _gen(args) -> int:
    cube = _cube(args.cube)
    config = StrategyConfig.from_method_name(args.method, args.model, budget=args.budget, seed=args.seed)
    result = run_strategy(config, cube=cube, limits=ResourceLimits.from_settings())
    if args.out:
        out = Path(args.out)
        slug = f"{result.method}_{result.model_kind.value}"
        export_sample_log(result, out / f"{slug}_samples.csv")
        export_scatter(result, out / f"{slug}_scatter.csv")
        result.archive.to_csv(out / f"{slug}_archive.csv")
    print(
        f"{config.label}: fshc={result.fshc:.1f}% covered={len(result.covered_cells)} "
        f"preferred={result.preferred_ratio:.1f}% infeasible={result.infeasible_ratio:.1f}% "
        f"time={result.wall_time:.2f}s"
    )
    return 0


def _oracle(args) -> int:
    cube = _cube(args.cube)
    cells = max_achievable_cells(cube, limits=ResourceLimits.from_settings())
    print(f"cube {cube.label()}: {cells} of {cube.cell_count} cells achievable ({100.0 * cells / cube.cell_count:.1f}%)")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    _configure_logging()
    args = _build_parser().parse_args(argv)
    handlers = {"run": _run, "gen": _gen, "oracle": _oracle}
    try:
        return handlers[args.command](args)
    except (ValueError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
