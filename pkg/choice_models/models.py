"""
Choice model definitions.

A choice model turns a flat vector of probabilities into decisions at the
parameterized choice points of a generator. The vector layout is derived
from the generator's choice-point schema in source order:

- RULE points take one categorical weight per alternative
- BOOLEAN and REPETITION points take one probability of the "1" outcome
- depth-conditioned RULE points repeat their weights once per depth bucket

For the expression generator this gives 8 parameters for the Default model
and 16 for RecDepth5 (five operand-kind pairs for depths 0, 1, 2, 3 and 4+).
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, field_validator

from engine.choice_points import ChoiceKind, ChoicePoint
from engine.errors import ConfigurationError


class ModelKind(str, Enum):
    DEFAULT = "Default"
    REC_DEPTH5 = "RecDepth5"

    @property
    def depth_buckets(self) -> int:
        return 5 if self is ModelKind.REC_DEPTH5 else 1


class ChoiceModelParams(BaseModel):
    """
    Immutable parameter vector of a choice model.

    Every component lies in [0, 1].
    """
    model_config = ConfigDict(frozen=True)

    values: Tuple[float, ...]
    model_kind: ModelKind

    @field_validator("values")
    @classmethod
    def validate_values(cls, values: Tuple[float, ...]) -> Tuple[float, ...]:
        for i, v in enumerate(values):
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"Parameter {i} = {v} outside [0, 1]")
        return values

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class _Slot:
    start: int
    width: int
    buckets: int


@dataclass(frozen=True)
class ParameterLayout:
    """Offsets of each parameterized choice point inside the flat vector."""
    model_kind: ModelKind
    choice_points: Tuple[ChoicePoint, ...]
    slots: Dict[int, _Slot]
    size: int

    def offset(self, choice_point: ChoicePoint, depth: int) -> int:
        slot = self.slots[choice_point.id]
        bucket = min(depth, slot.buckets - 1)
        return slot.start + bucket * slot.width

    def slice_for(self, choice_point: ChoicePoint, depth: int = 0) -> slice:
        """Index range of the parameters governing `choice_point` at `depth`."""
        start = self.offset(choice_point, depth)
        return slice(start, start + self.slots[choice_point.id].width)


@lru_cache(maxsize=None)
def layout_for(choice_points: Tuple[ChoicePoint, ...], model_kind: ModelKind) -> ParameterLayout:
    slots: Dict[int, _Slot] = {}
    position = 0
    for cp in choice_points:
        if not cp.kind.is_parameterized:
            continue
        width = cp.arity if cp.kind is ChoiceKind.RULE else 1
        buckets = model_kind.depth_buckets if cp.depth_conditioned else 1
        slots[cp.id] = _Slot(position, width, buckets)
        position += width * buckets
    parameterized = tuple(cp for cp in choice_points if cp.kind.is_parameterized)
    return ParameterLayout(model_kind, parameterized, slots, position)


def _default_schema() -> Tuple[ChoicePoint, ...]:
    from generators.expr_generator import build_generator

    return build_generator().parameterized_points


def parameter_count(model_kind: ModelKind, choice_points: Optional[Tuple[ChoicePoint, ...]] = None) -> int:
    """Length of the parameter vector for `model_kind` over a generator schema."""
    schema = choice_points if choice_points is not None else _default_schema()
    return layout_for(schema, model_kind).size


class ChoiceModel:
    """
    A parameter vector bound to a generator's choice-point schema.

    Every decision consumes exactly one uniform draw from the random source,
    so models with pair-aligned parameters make identical decision sequences
    under the same seed.
    """

    def __init__(self, params: ChoiceModelParams, choice_points: Sequence[ChoicePoint]):
        self._params = params
        self._choice_points = tuple(choice_points)
        self._layout = layout_for(self._choice_points, params.model_kind)
        if len(params.values) != self._layout.size:
            raise ConfigurationError(
                f"{params.model_kind.value} model over this schema needs "
                f"{self._layout.size} parameters, got {len(params.values)}"
            )
        self._points_by_id = {cp.id: cp for cp in self._layout.choice_points}

    @classmethod
    def for_generator(cls, params: ChoiceModelParams, generator=None) -> "ChoiceModel":
        if generator is None:
            from generators.expr_generator import build_generator

            generator = build_generator()
        return cls(params, generator.parameterized_points)

    @property
    def params(self) -> ChoiceModelParams:
        return self._params

    @property
    def model_kind(self) -> ModelKind:
        return self._params.model_kind

    @property
    def choice_points(self) -> Tuple[ChoicePoint, ...]:
        return self._layout.choice_points

    @property
    def layout(self) -> ParameterLayout:
        return self._layout

    def decide(self, choice_point: ChoicePoint, depth: int, rng) -> int:
        """
        Sample an alternative for `choice_point` at nesting `depth`.

        Raises:
            ConfigurationError: If the choice point is not part of this model's schema
        """
        if self._points_by_id.get(choice_point.id) != choice_point:
            raise ConfigurationError(
                f"Choice point {choice_point.id} ({choice_point.label}) is not governed by this model"
            )
        start = self._layout.offset(choice_point, depth)
        u = float(rng.random())

        if choice_point.kind is not ChoiceKind.RULE:
            return 1 if u < self._params.values[start] else 0

        weights = self._params.values[start:start + choice_point.arity]
        total = sum(weights)
        if total <= 0.0:
            return min(int(u * choice_point.arity), choice_point.arity - 1)
        threshold = u * total
        cumulative = 0.0
        last_positive = 0
        for index, weight in enumerate(weights):
            if weight <= 0.0:
                continue
            cumulative += weight
            last_positive = index
            if threshold < cumulative:
                return index
        return last_positive


def decide(model: ChoiceModel, choice_point: ChoicePoint, depth: int, rng) -> int:
    """Functional form of `ChoiceModel.decide`."""
    return model.decide(choice_point, depth, rng)


def constant_params(model_kind: ModelKind, value: float, choice_points=None) -> ChoiceModelParams:
    """Parameter vector with every component equal to `value`."""
    return ChoiceModelParams(
        values=(float(value),) * parameter_count(model_kind, choice_points),
        model_kind=model_kind,
    )
