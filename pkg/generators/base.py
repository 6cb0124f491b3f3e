"""
Generator program interface.

A generator program is a grammar written as code: it emits terminals and
asks the derivation context for every decision, so the same program can be
driven by any choice model or decision policy.
"""

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Set, Tuple

from engine.choice_points import ChoicePoint

if TYPE_CHECKING:
    from engine.derivation import DerivationContext, ResourceLimits


class GeneratorProgram(ABC):
    """
    Abstract base class for generator programs.

    Design Rules:
    1. Stateless - everything about one derivation lives in the context
    2. Every random decision goes through `ctx.choose`
    3. Nested structures are bracketed with `ctx.open_group`/`ctx.close_group`
    4. Characters the derivation is already bound to emit may be `ctx.reserve`d,
       never more than will actually follow
    """

    @property
    @abstractmethod
    def generator_id(self) -> str:
        """Unique identifier for this generator."""

    @property
    @abstractmethod
    def choice_points(self) -> Tuple[ChoicePoint, ...]:
        """All choice points in grammar-source order."""

    @property
    def parameterized_points(self) -> Tuple[ChoicePoint, ...]:
        """Choice points governed by choice-model parameters."""
        return tuple(cp for cp in self.choice_points if cp.kind.is_parameterized)

    @abstractmethod
    def derive(self, ctx: "DerivationContext") -> None:
        """Derive one sentence into `ctx`."""

    @abstractmethod
    def reachable_features(self, max_length: int, limits: "ResourceLimits") -> Set[Tuple[int, int]]:
        """
        All (length, num_digits) pairs with length <= max_length that some
        feasible derivation produces. Exact, no sampling: the coverage oracle
        relies on it.
        """

    def __repr__(self):
        return f"<GeneratorProgram: {self.generator_id}>"
