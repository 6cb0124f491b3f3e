"""
Decision policies.

A policy sits between the engine and the choice model: at every choice point
it may force an alternative, otherwise the decision is delegated to the base
choice model (or, for VALUE points, to a uniform draw).
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Callable, Optional, Sequence

from engine.choice_points import ChoicePoint, Decision
from engine.errors import ConfigurationError

if TYPE_CHECKING:
    from choice_models.models import ChoiceModel


class DecisionPolicy(ABC):
    """
    Base class for decision policies.

    Subclasses only implement `force`; delegation to the base model is shared.
    """

    def __init__(self, model: Optional["ChoiceModel"] = None):
        self._model = model

    @property
    def model(self) -> Optional["ChoiceModel"]:
        return self._model

    @abstractmethod
    def force(self, choice_point: ChoicePoint, depth: int, step: int) -> Optional[int]:
        """
        Return the alternative to force at this step, or None to delegate.

        Args:
            choice_point: Static site being decided
            depth: Current nesting depth
            step: Index of this decision within the trace
        """

    def delegate(self, choice_point: ChoicePoint, depth: int, rng) -> int:
        """Decide without forcing: uniform for VALUE points, base model otherwise."""
        if not choice_point.kind.is_parameterized:
            if rng is None:
                raise ConfigurationError(
                    f"No random source available to draw {choice_point.label}"
                )
            return int(rng.integers(choice_point.arity))
        if self._model is None:
            raise ConfigurationError(
                f"Policy has no base choice model to decide {choice_point.label}"
            )
        return self._model.decide(choice_point, depth, rng)


class ModelPolicy(DecisionPolicy):
    """Delegates every decision to the base model."""

    def force(self, choice_point: ChoicePoint, depth: int, step: int) -> Optional[int]:
        return None


class ReplayPolicy(DecisionPolicy):
    """
    Replays a recorded decision prefix, then delegates.

    Without a base model the prefix must cover the whole derivation.
    """

    def __init__(self, prefix: Sequence[Decision], model: Optional["ChoiceModel"] = None):
        super().__init__(model)
        self._prefix = tuple(prefix)

    @property
    def prefix(self) -> tuple[Decision, ...]:
        return self._prefix

    def force(self, choice_point: ChoicePoint, depth: int, step: int) -> Optional[int]:
        if step >= len(self._prefix):
            if self._model is None and choice_point.kind.is_parameterized:
                raise ConfigurationError(
                    f"Replayed trace ended at step {step} but the generator asked for {choice_point.label}"
                )
            return None
        recorded = self._prefix[step]
        if recorded.choice_point != choice_point.id:
            raise ConfigurationError(
                f"Trace mismatch at step {step}: recorded choice point {recorded.choice_point}, "
                f"generator reached {choice_point.id} ({choice_point.label})"
            )
        return recorded.alternative


class FunctionPolicy(DecisionPolicy):
    """Forces whatever `chooser(choice_point, depth, step)` returns; None delegates."""

    def __init__(
        self,
        chooser: Callable[[ChoicePoint, int, int], Optional[int]],
        model: Optional["ChoiceModel"] = None,
    ):
        super().__init__(model)
        self._chooser = chooser

    def force(self, choice_point: ChoicePoint, depth: int, step: int) -> Optional[int]:
        return self._chooser(choice_point, depth, step)
