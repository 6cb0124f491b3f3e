"""
Strategy configuration.

One immutable StrategyConfig describes a single search run. Canonical method
names ("rand-freq1", "rand-mfreq10-LHS30", "nmcs-4-batch", "hillclimb-4-20",
...) round-trip through `method_name` and `from_method_name`.
"""

import re
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from choice_models.models import ModelKind
from config.settings import get_settings
from engine.errors import ConfigurationError


class MethodFamily(str, Enum):
    RAND_ONCE = "rand-once"
    RAND_FREQ = "rand-freq"
    RAND_MFREQ = "rand-mfreq"
    RAND_MFREQ_LHS = "rand-mfreq-lhs"
    NMCS = "nmcs"
    HILLCLIMB = "hillclimb"


class NmcsUpdate(str, Enum):
    DIRECT = "direct"
    BATCH = "batch"


_METHOD_PATTERNS = [
    (MethodFamily.RAND_ONCE, re.compile(r"^rand-once$")),
    (MethodFamily.RAND_FREQ, re.compile(r"^rand-freq(?P<n>\d+)$")),
    (MethodFamily.RAND_MFREQ_LHS, re.compile(r"^rand-mfreq(?P<n>\d+)-LHS(?P<b>\d+)$")),
    (MethodFamily.RAND_MFREQ, re.compile(r"^rand-mfreq(?P<n>\d+)$")),
    (MethodFamily.NMCS, re.compile(r"^nmcs-(?P<s>\d+)-(?P<update>direct|batch)$")),
    (MethodFamily.HILLCLIMB, re.compile(r"^hillclimb-(?P<min>\d+)-(?P<max>\d+)$")),
]


def _settings_default(name: str):
    return lambda: getattr(get_settings(), name)


class StrategyConfig(BaseModel):
    """
    Immutable configuration of one search run.

    Only the fields of the selected family are meaningful; the others keep
    their defaults and still take part in the config hash.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    family: MethodFamily
    model_kind: ModelKind = ModelKind.DEFAULT

    # Random resampling
    resample_period: Optional[int] = Field(default=None, ge=1, description="N: attempts between resamples")
    lhs_bins: Optional[int] = Field(default=None, ge=1, description="B: Latin Hypercube bins")

    # Nested Monte-Carlo search
    nmcs_sample_size: int = Field(default=2, ge=1, description="S: candidates per decision")
    nmcs_update: NmcsUpdate = NmcsUpdate.DIRECT
    nmcs_base_value: float = Field(default_factory=_settings_default("nmcs_base_value"), ge=0.0, le=1.0)
    nmcs_rollout_cutoff: bool = Field(default_factory=_settings_default("nmcs_rollout_cutoff"))

    # Hill climbing
    hc_min_samples: int = Field(default_factory=_settings_default("hc_min_samples"), ge=1)
    hc_max_samples: int = Field(default_factory=_settings_default("hc_max_samples"), ge=1)
    hc_max_infeasible_fraction: float = Field(
        default_factory=_settings_default("hc_max_infeasible_fraction"), ge=0.0, le=1.0
    )
    hc_max_outside_fraction: float = Field(
        default_factory=_settings_default("hc_max_outside_fraction"), ge=0.0, le=1.0
    )
    hc_acceptance_p_value: float = Field(
        default_factory=_settings_default("hc_acceptance_p_value"), gt=0.0, le=1.0
    )
    sigma: float = Field(default_factory=_settings_default("gaussian_sigma"), gt=0.0)

    budget: int = Field(default_factory=_settings_default("budget"), ge=1)
    seed: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def validate_family_fields(self) -> "StrategyConfig":
        if self.family in (MethodFamily.RAND_FREQ, MethodFamily.RAND_MFREQ, MethodFamily.RAND_MFREQ_LHS):
            if self.resample_period is None:
                raise ValueError(f"{self.family.value} requires resample_period")
        if self.family is MethodFamily.RAND_MFREQ_LHS and self.lhs_bins is None:
            raise ValueError("rand-mfreq-lhs requires lhs_bins")
        if self.hc_min_samples > self.hc_max_samples:
            raise ValueError(
                f"hc_min_samples ({self.hc_min_samples}) cannot exceed hc_max_samples ({self.hc_max_samples})"
            )
        return self

    @property
    def method_name(self) -> str:
        if self.family is MethodFamily.RAND_ONCE:
            return "rand-once"
        if self.family is MethodFamily.RAND_FREQ:
            return f"rand-freq{self.resample_period}"
        if self.family is MethodFamily.RAND_MFREQ:
            return f"rand-mfreq{self.resample_period}"
        if self.family is MethodFamily.RAND_MFREQ_LHS:
            return f"rand-mfreq{self.resample_period}-LHS{self.lhs_bins}"
        if self.family is MethodFamily.NMCS:
            return f"nmcs-{self.nmcs_sample_size}-{self.nmcs_update.value}"
        return f"hillclimb-{self.hc_min_samples}-{self.hc_max_samples}"

    @property
    def label(self) -> str:
        return f"{self.method_name} ({self.model_kind.value})"

    @classmethod
    def from_method_name(
        cls,
        name: str,
        model_kind: ModelKind | str = ModelKind.DEFAULT,
        **overrides,
    ) -> "StrategyConfig":
        """
        Build a config from a canonical method name.

        Raises:
            ConfigurationError: If the name matches no known method
        """
        for family, pattern in _METHOD_PATTERNS:
            match = pattern.match(name.strip())
            if match is None:
                continue
            groups = match.groupdict()
            fields = {"family": family, "model_kind": ModelKind(model_kind)}
            if "n" in groups:
                fields["resample_period"] = int(groups["n"])
            if "b" in groups:
                fields["lhs_bins"] = int(groups["b"])
            if "s" in groups:
                fields["nmcs_sample_size"] = int(groups["s"])
                fields["nmcs_update"] = NmcsUpdate(groups["update"])
            if "min" in groups:
                fields["hc_min_samples"] = int(groups["min"])
                fields["hc_max_samples"] = int(groups["max"])
            fields.update(overrides)
            try:
                return cls(**fields)
            except ValueError as e:
                raise ConfigurationError(f"Invalid method '{name}': {e}") from e
        raise ConfigurationError(
            f"Unknown method '{name}'. Expected one of: rand-once, rand-freqN, rand-mfreqN, "
            f"rand-mfreqN-LHSB, nmcs-S-direct, nmcs-S-batch, hillclimb-MIN-MAX"
        )
