"""
Experiment configuration.

Defines the method x model x repetition grid of one experiment. Loaded from
YAML and validated strictly: unknown keys and invalid method names fail
before any run starts.
"""

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

import numpy as np
import yaml
from pydantic import BaseModel, ConfigDict, Field, model_validator

from choice_models.models import ModelKind
from config.method_presets import REFERENCE_GRID, MethodPreset
from config.settings import get_settings
from engine.derivation import ResourceLimits
from features.space import PreferenceHypercube
from strategies.config import StrategyConfig


_NON_SEMANTIC_FIELDS = {"output_directory", "workers", "export_scatter", "export_sample_logs", "export_archives"}


def _settings_default(name: str):
    return lambda: getattr(get_settings(), name)


def _default_cube() -> PreferenceHypercube:
    settings = get_settings()
    return PreferenceHypercube(length_range=settings.length_range, digits_range=settings.digits_range)


def derive_seed(master_seed: int, method_index: int, repetition: int) -> int:
    """Independent 64-bit seed for one run."""
    state = np.random.SeedSequence([master_seed, method_index, repetition]).generate_state(1, np.uint64)
    return int(state[0])


class MethodEntry(BaseModel):
    """A method name and the choice model it runs with."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str
    model: ModelKind = ModelKind.DEFAULT
    repetitions: Optional[int] = Field(default=None, gt=0)

    @classmethod
    def from_preset(cls, preset: MethodPreset) -> "MethodEntry":
        return cls(name=preset.method, model=preset.model_kind, repetitions=preset.repetitions)


@dataclass(frozen=True)
class RunSpec:
    """One scheduled run."""
    method_index: int
    repetition: int
    config: StrategyConfig


class ExperimentConfig(BaseModel):
    """
    Immutable configuration of one experiment.

    All methods share the cube, budget and resource limits.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    methods: List[MethodEntry]
    cube: PreferenceHypercube = Field(default_factory=_default_cube)
    repetitions: int = Field(default_factory=_settings_default("repetitions"), gt=0)
    budget: int = Field(default_factory=_settings_default("budget"), gt=0)
    master_seed: int = Field(default=0, ge=0)
    sigma: float = Field(default_factory=_settings_default("gaussian_sigma"), gt=0.0)
    limits: ResourceLimits = Field(default_factory=ResourceLimits.from_settings)
    output_directory: str = Field(default_factory=_settings_default("output_directory"))
    workers: int = Field(default=1, ge=1)
    export_scatter: bool = True
    export_sample_logs: bool = False
    export_archives: bool = False

    @model_validator(mode="after")
    def validate_methods(self) -> "ExperimentConfig":
        if not self.methods:
            raise ValueError("Experiment must have at least one method")
        for entry in self.methods:
            StrategyConfig.from_method_name(entry.name, entry.model, budget=self.budget, sigma=self.sigma)
        return self

    @classmethod
    def load(cls, path: str | Path) -> "ExperimentConfig":
        """
        Load a YAML experiment file.

        Raises:
            OSError: If the file cannot be read
            ValueError: If the content is not a valid experiment
        """
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
        if not isinstance(data, dict):
            raise ValueError(f"{path}: expected a mapping at the top level")
        return cls.model_validate(data)

    @classmethod
    def reference_grid(cls, **overrides) -> "ExperimentConfig":
        """The ten-combination comparison grid."""
        return cls(methods=[MethodEntry.from_preset(p) for p in REFERENCE_GRID], **overrides)

    def repetitions_for(self, entry: MethodEntry) -> int:
        if entry.repetitions is None:
            return self.repetitions
        return min(entry.repetitions, self.repetitions)

    def run_specs(self) -> List[RunSpec]:
        specs = []
        for method_index, entry in enumerate(self.methods):
            for repetition in range(self.repetitions_for(entry)):
                config = StrategyConfig.from_method_name(
                    entry.name,
                    entry.model,
                    budget=self.budget,
                    sigma=self.sigma,
                    seed=derive_seed(self.master_seed, method_index, repetition),
                )
                specs.append(RunSpec(method_index, repetition, config))
        return specs

    def compute_hash(self) -> str:
        """
        Deterministic hash of every field that affects results.

        Returns:
            SHA256 hash of the JSON representation (sorted keys).
        """
        data = self.model_dump(mode="json", exclude=_NON_SEMANTIC_FIELDS)
        json_str = json.dumps(data, sort_keys=True)
        return hashlib.sha256(json_str.encode("utf-8")).hexdigest()
