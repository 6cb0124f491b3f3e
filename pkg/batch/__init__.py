"""Batch processing package (experiment config, runner, aggregation, exports)."""

from batch.experiment_config import ExperimentConfig
from batch.experiment_runner import ExperimentRunner

__all__ = ["ExperimentConfig", "ExperimentRunner"]
