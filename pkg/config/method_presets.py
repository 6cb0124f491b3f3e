"""
Method Preset Registry.

Named method x choice-model combinations. The reference grid holds the ten
combinations compared in the diversity study.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from choice_models.models import ModelKind


class MethodPreset(BaseModel):
    """One method under one choice model."""
    model_config = ConfigDict(frozen=True)

    method: str
    model_kind: ModelKind
    repetitions: Optional[int] = Field(default=None, gt=0, description="Overrides the experiment's repetitions")

    @property
    def preset_id(self) -> str:
        return f"{self.method}/{self.model_kind.value}"


_PRESETS: Dict[str, MethodPreset] = {}


def register_preset(preset: MethodPreset) -> None:
    """Register a preset."""
    _PRESETS[preset.preset_id] = preset


def get_preset(preset_id: str) -> MethodPreset:
    """Get a preset by ID ("method/Model")."""
    if preset_id not in _PRESETS:
        raise ValueError(f"Unknown preset: {preset_id}. Available: {list(_PRESETS.keys())}")
    return _PRESETS[preset_id]


def list_presets() -> List[str]:
    return list(_PRESETS.keys())


# --- Reference grid ---

REFERENCE_GRID: List[MethodPreset] = [
    MethodPreset(method="hillclimb-4-20", model_kind=ModelKind.REC_DEPTH5),
    MethodPreset(method="rand-mfreq5-LHS10", model_kind=ModelKind.REC_DEPTH5),
    MethodPreset(method="rand-mfreq10-LHS30", model_kind=ModelKind.REC_DEPTH5),
    MethodPreset(method="rand-freq1", model_kind=ModelKind.REC_DEPTH5),
    MethodPreset(method="rand-freq1", model_kind=ModelKind.DEFAULT, repetitions=10),  # slowest method
    MethodPreset(method="nmcs-4-direct", model_kind=ModelKind.DEFAULT),
    MethodPreset(method="nmcs-2-direct", model_kind=ModelKind.DEFAULT),
    MethodPreset(method="nmcs-2-batch", model_kind=ModelKind.DEFAULT),
    MethodPreset(method="nmcs-4-batch", model_kind=ModelKind.DEFAULT),
    MethodPreset(method="rand-once", model_kind=ModelKind.DEFAULT),
]

for _preset in REFERENCE_GRID:
    register_preset(_preset)
