"""
Choice point definitions.

A choice point is a static decision site inside a generator program. Every
decision taken at such a site is handed to a decision policy and recorded in
the decision trace, so a complete trace reproduces its output exactly.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Tuple


class ChoiceKind(str, Enum):
    """Kind of decision made at a choice point."""
    RULE = "RULE"              # pick one production out of `arity`
    BOOLEAN = "BOOLEAN"        # 0 = false, 1 = true
    REPETITION = "REPETITION"  # 0 = stop, 1 = continue
    VALUE = "VALUE"            # uniform draw, not governed by a model parameter

    @property
    def is_parameterized(self) -> bool:
        return self is not ChoiceKind.VALUE


@dataclass(frozen=True)
class ChoicePoint:
    """
    A static decision site.

    Ids are assigned in grammar-source order and never change between runs,
    which keeps the parameter-vector layout stable.
    """
    id: int
    kind: ChoiceKind
    arity: int
    label: str
    depth_conditioned: bool = False

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError(f"Choice point {self.label} needs at least one alternative")
        if self.kind in (ChoiceKind.BOOLEAN, ChoiceKind.REPETITION) and self.arity != 2:
            raise ValueError(f"{self.kind.value} choice point {self.label} must have arity 2")
        if self.depth_conditioned and self.kind is not ChoiceKind.RULE:
            raise ValueError("Only rule-selection choice points can be depth conditioned")


@dataclass(frozen=True)
class Decision:
    """One recorded decision: where it was taken, at which nesting depth, and the outcome."""
    choice_point: int
    depth: int
    alternative: int


@dataclass(frozen=True)
class DecisionTrace:
    """Ordered decisions of one generation attempt."""
    decisions: Tuple[Decision, ...]
    complete: bool

    def __len__(self) -> int:
        return len(self.decisions)

    def prefix(self, length: int) -> Tuple[Decision, ...]:
        return self.decisions[:length]
