"""
Project settings and configuration.

Centralizes the defaults shared by the engine, the strategies and the
experiment runner.
"""

from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field

TOOL_VERSION = "0.1.0"


class Settings(BaseModel):
    """
    Project configuration.

    All settings are immutable and frozen at runtime.
    """
    model_config = ConfigDict(frozen=True)

    # Resource limits (exceeding either makes a generation infeasible)
    max_nesting_depth: int = Field(default=20, gt=0, description="Deepest allowed parenthesis nesting")
    max_output_length: int = Field(default=10_000, gt=0, description="Longest allowed output (characters)")

    # Preference hypercube
    length_range: Tuple[int, int] = Field(default=(3, 50), description="Inclusive Length range")
    digits_range: Tuple[int, int] = Field(default=(2, 25), description="Inclusive NumDigits range")

    # Search
    budget: int = Field(default=10_000, gt=0, description="Generation attempts per run")
    repetitions: int = Field(default=25, gt=0, description="Runs per method and model")
    gaussian_sigma: float = Field(default=0.05, gt=0.0, description="Hill-climb perturbation sd")

    # Hill climbing
    hc_min_samples: int = Field(default=4, gt=0)
    hc_max_samples: int = Field(default=20, gt=0)
    hc_max_infeasible_fraction: float = Field(default=1.0 / 3.0, ge=0.0, le=1.0)
    hc_max_outside_fraction: float = Field(default=0.5, ge=0.0, le=1.0)
    hc_acceptance_p_value: float = Field(default=0.20, gt=0.0, le=1.0)

    # Nested Monte-Carlo search
    nmcs_base_value: float = Field(default=0.5, ge=0.0, le=1.0, description="Every base-model parameter")
    nmcs_rollout_cutoff: bool = Field(default=True, description="Stop rollouts that can only end beyond the cube")

    # Output
    output_directory: str = Field(default="results", description="Where experiment reports are written")


_settings = None

def get_settings() -> Settings:
    """Get the global settings instance."""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings
