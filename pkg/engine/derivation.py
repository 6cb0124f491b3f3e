"""
Derivation engine - executes a generator program.

Owns the output buffer, nesting-depth bookkeeping and resource limits, and
routes every decision through a decision policy. Generations that exceed a
limit are aborted and reported as infeasible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from engine.choice_points import ChoicePoint, Decision, DecisionTrace
from engine.errors import ConfigurationError
from engine.policies import DecisionPolicy, ModelPolicy, ReplayPolicy
from features.space import FeatureVector, extract_features

if TYPE_CHECKING:
    from choice_models.models import ChoiceModel
    from generators.base import GeneratorProgram


class ResourceLimits(BaseModel):
    """
    Limits beyond which a generation is classified infeasible.

    Depth counts unclosed groups; length counts emitted characters.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    max_nesting_depth: int = Field(default=20, gt=0)
    max_output_length: int = Field(default=10_000, gt=0)

    @classmethod
    def from_settings(cls, settings=None) -> "ResourceLimits":
        from config.settings import get_settings

        settings = settings or get_settings()
        return cls(
            max_nesting_depth=settings.max_nesting_depth,
            max_output_length=settings.max_output_length,
        )


@dataclass(frozen=True)
class GeneratedDatum:
    """
    One generation attempt.

    `output` and `features` are None exactly when the trace is incomplete:
    either a resource limit was exceeded, or the derivation was cut off at a
    length horizon (`cut_off`), in which case every completion of the trace
    would be longer than the horizon.
    """
    output: Optional[str]
    trace: DecisionTrace
    features: Optional[FeatureVector]
    cut_off: bool = False

    @property
    def feasible(self) -> bool:
        return self.output is not None


class _LimitExceeded(Exception):
    """Aborts a derivation; never escapes the engine."""


class _HorizonReached(Exception):
    """Stops a derivation that can only end beyond the length horizon."""


class DerivationContext:
    """
    Handle passed to a generator program while it derives one sentence.

    Programs call `choose` for decisions, `emit` for terminals and
    `open_group`/`close_group` around nested subexpressions. Closing tokens
    are non-empty, and programs `reserve` the characters they are bound to
    emit later, so `length + depth + reserved` is a lower bound on the length
    of any completion.
    """

    __slots__ = ("_policy", "_limits", "_rng", "_horizon", "_parts", "_length", "_depth", "_reserved", "_decisions")

    def __init__(self, policy: DecisionPolicy, limits: ResourceLimits, rng, horizon: Optional[int] = None):
        self._policy = policy
        self._limits = limits
        self._rng = rng
        self._horizon = horizon
        self._parts: List[str] = []
        self._length = 0
        self._depth = 0
        self._reserved = 0
        self._decisions: List[Decision] = []

    def _check_horizon(self) -> None:
        if self._horizon is not None and self._length + self._depth + self._reserved > self._horizon:
            raise _HorizonReached()

    @property
    def depth(self) -> int:
        return self._depth

    @property
    def length(self) -> int:
        return self._length

    @property
    def decisions(self) -> List[Decision]:
        return self._decisions

    def choose(self, choice_point: ChoicePoint) -> int:
        step = len(self._decisions)
        forced = self._policy.force(choice_point, self._depth, step)
        if forced is None:
            alternative = self._policy.delegate(choice_point, self._depth, self._rng)
        else:
            if not 0 <= forced < choice_point.arity:
                raise ConfigurationError(
                    f"Forced alternative {forced} out of range for {choice_point.label} "
                    f"(arity {choice_point.arity})"
                )
            alternative = forced
        self._decisions.append(Decision(choice_point.id, self._depth, alternative))
        return alternative

    def emit(self, text: str) -> None:
        self._length += len(text)
        self._check_horizon()
        if self._length > self._limits.max_output_length:
            raise _LimitExceeded()
        self._parts.append(text)

    def open_group(self, token: str) -> None:
        self.emit(token)
        self._depth += 1
        self._check_horizon()
        if self._depth > self._limits.max_nesting_depth:
            raise _LimitExceeded()

    def close_group(self, token: str) -> None:
        self._depth -= 1
        self.emit(token)

    def reserve(self, n: int) -> None:
        """Declare `n` characters the program will still emit before it finishes."""
        self._reserved += n
        self._check_horizon()

    def release(self, n: int) -> None:
        self._reserved -= n

    def output(self) -> str:
        return "".join(self._parts)


class DerivationEngine:
    """
    Runs a generator program under a policy and resource limits.

    Holds no mutable state between generations, so one engine may be shared
    by independent runs as long as each run brings its own random stream.
    """

    def __init__(self, generator: "GeneratorProgram", limits: Optional[ResourceLimits] = None):
        self._generator = generator
        self._limits = limits if limits is not None else ResourceLimits()

    @property
    def generator(self) -> "GeneratorProgram":
        return self._generator

    @property
    def limits(self) -> ResourceLimits:
        return self._limits

    def generate(self, model: "ChoiceModel", rng) -> GeneratedDatum:
        """Generate one datum with every decision taken by `model`."""
        return self.generate_with_policy(ModelPolicy(model), rng)

    def generate_with_policy(self, policy: DecisionPolicy, rng, horizon: Optional[int] = None) -> GeneratedDatum:
        """
        Generate one datum under `policy`.

        Args:
            policy: Decision policy
            rng: Random stream for delegated decisions
            horizon: If set, stop as soon as every completion would be longer
                than this many characters

        Raises:
            ConfigurationError: If the policy's model was built for another schema,
                or a forced alternative is out of range
        """
        if policy.model is not None:
            self._check_schema(policy.model)

        ctx = DerivationContext(policy, self._limits, rng, horizon)
        try:
            self._generator.derive(ctx)
        except (_LimitExceeded, _HorizonReached) as e:
            return GeneratedDatum(
                output=None,
                trace=DecisionTrace(tuple(ctx.decisions), complete=False),
                features=None,
                cut_off=isinstance(e, _HorizonReached),
            )

        output = ctx.output()
        return GeneratedDatum(
            output=output,
            trace=DecisionTrace(tuple(ctx.decisions), complete=True),
            features=extract_features(output),
        )

    def replay(self, trace: DecisionTrace) -> GeneratedDatum:
        """Re-run a recorded trace without any randomness."""
        return self.generate_with_policy(ReplayPolicy(trace.decisions), rng=None)

    def _check_schema(self, model: "ChoiceModel") -> None:
        if model.choice_points != self._generator.parameterized_points:
            raise ConfigurationError(
                f"Choice model schema {[cp.label for cp in model.choice_points]} does not match "
                f"generator '{self._generator.generator_id}' schema "
                f"{[cp.label for cp in self._generator.parameterized_points]}"
            )


def generate(
    generator: "GeneratorProgram",
    model: "ChoiceModel",
    limits: ResourceLimits,
    rng,
) -> GeneratedDatum:
    """Generate one datum from `generator` with decisions taken by `model`."""
    return DerivationEngine(generator, limits).generate(model, rng)


def generate_with_policy(
    generator: "GeneratorProgram",
    policy: DecisionPolicy,
    limits: ResourceLimits,
    rng,
    horizon: Optional[int] = None,
) -> GeneratedDatum:
    """Generate one datum from `generator` under `policy`."""
    return DerivationEngine(generator, limits).generate_with_policy(policy, rng, horizon)
