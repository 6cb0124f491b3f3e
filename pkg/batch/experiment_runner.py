"""
Experiment runner.

Executes every (method, model, repetition) run of an ExperimentConfig,
optionally on a process pool, and writes the report files:

    summary.csv       one row per method x model
    runs.csv          one row per run
    timeseries.csv    coverage / time / infeasible ratio per run
    comparisons.csv   pairwise one-sided Mann-Whitney p-values
    report.json       provenance, summary, runs and comparisons
    scatter/          per-datum features of each method's first repetition
"""

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, fields
from pathlib import Path
from typing import Iterator, List, Tuple

import pandas as pd

from batch.aggregation import compare_rows, summarize
from batch.experiment_config import ExperimentConfig, RunSpec
from batch.exports import export_sample_log, export_scatter, export_timeseries, write_csv
from batch.models import ComparisonRow, ExperimentReport, RunRecord
from config.settings import TOOL_VERSION
from engine.derivation import ResourceLimits
from features.space import PreferenceHypercube
from strategies.models import RunResult
from strategies.registry import run_strategy

logger = logging.getLogger(__name__)


def _execute(spec: RunSpec, cube: PreferenceHypercube, limits: ResourceLimits) -> Tuple[RunSpec, RunResult]:
    return spec, run_strategy(spec.config, cube=cube, limits=limits)


def _slug(method: str, model: str) -> str:
    return f"{method}_{model}"


class ExperimentRunner:
    """
    Runs an experiment grid and writes its report.

    Each run owns its archive and random stream; the report is assembled
    single-threaded once all runs are done.
    """

    def __init__(self, config: ExperimentConfig):
        self.config = config
        self.output_dir = Path(config.output_directory)

    def _results(self, specs: List[RunSpec]) -> Iterator[Tuple[RunSpec, RunResult]]:
        cfg = self.config
        if cfg.workers <= 1:
            for spec in specs:
                yield _execute(spec, cfg.cube, cfg.limits)
            return
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            futures = [pool.submit(_execute, spec, cfg.cube, cfg.limits) for spec in specs]
            for future in futures:
                yield future.result()

    def _export_run(self, spec: RunSpec, result: RunResult) -> None:
        cfg = self.config
        slug = _slug(result.method, result.model_kind.value)
        if cfg.export_scatter and spec.repetition == 0:
            export_scatter(result, self.output_dir / "scatter" / f"{slug}.csv")
        if cfg.export_sample_logs:
            export_sample_log(result, self.output_dir / "samples" / f"{slug}_rep{spec.repetition}.csv")
        if cfg.export_archives:
            result.archive.to_csv(self.output_dir / "archives" / f"{slug}_rep{spec.repetition}.csv")

    def run(self) -> ExperimentReport:
        """
        Execute all runs and write the report.

        Raises:
            OSError: If the output directory is not writable
        """
        cfg = self.config
        self.output_dir.mkdir(parents=True, exist_ok=True)
        specs = cfg.run_specs()
        config_hash = cfg.compute_hash()
        logger.info(
            f"Experiment {config_hash[:12]}: {len(cfg.methods)} methods, {len(specs)} runs, "
            f"budget {cfg.budget}, cube {cfg.cube.label()}"
        )

        records: List[RunRecord] = []
        for done, (spec, result) in enumerate(self._results(specs), start=1):
            records.append(RunRecord.from_result(result, spec.method_index, spec.repetition))
            self._export_run(spec, result)
            logger.info(
                f"[{done}/{len(specs)}] {spec.config.label} rep {spec.repetition}: "
                f"fshc={result.fshc:.1f}%"
            )

        records.sort(key=lambda r: (r.method_index, r.repetition))
        summary = summarize(records)
        report = ExperimentReport(
            config_hash=config_hash,
            master_seed=cfg.master_seed,
            tool_version=TOOL_VERSION,
            summary=summary,
            runs=records,
            comparisons=compare_rows(records, summary),
        )
        self._write_report(report)
        return report

    def _write_report(self, report: ExperimentReport) -> None:
        write_csv(pd.DataFrame([asdict(s) for s in report.summary]), self.output_dir / "summary.csv")
        write_csv(pd.DataFrame([asdict(r) for r in report.runs]), self.output_dir / "runs.csv")
        export_timeseries(report.runs, self.output_dir / "timeseries.csv")
        comparison_columns = [f.name for f in fields(ComparisonRow)]
        write_csv(
            pd.DataFrame([asdict(c) for c in report.comparisons], columns=comparison_columns),
            self.output_dir / "comparisons.csv",
        )
        with open(self.output_dir / "report.json", "w", encoding="utf-8", newline="\n") as f:
            json.dump(report.to_dict(), f, indent=2)
        logger.info(f"Report written to {self.output_dir}")


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    return ExperimentRunner(config).run()
