"""
Tests for the DerivationEngine.
"""

import re

import numpy as np
import pytest
from pydantic import ValidationError

from choice_models.models import ChoiceModel, ChoiceModelParams, ModelKind
from choice_models.sampling import sample_uniform
from engine.choice_points import Decision, DecisionTrace
from engine.derivation import DerivationEngine, ResourceLimits, generate, generate_with_policy
from engine.errors import ConfigurationError
from engine.policies import FunctionPolicy, ModelPolicy, ReplayPolicy
from generators.expr_generator import OPERAND_KIND, ExprGenerator, build_generator
from generators.validator import validate_expression


def default_model(values):
    return ChoiceModel.for_generator(ChoiceModelParams(values=tuple(values), model_kind=ModelKind.DEFAULT))


# operand-kind (number, sub), operators (+ - * /), sign, digit-continue
SHORTEST = default_model([1, 0, 1, 1, 1, 1, 0, 0])
ALWAYS_NEST = default_model([0, 1, 1, 1, 1, 1, 0, 0])


def random_models(n, seed=0):
    rng = np.random.default_rng(seed)
    return [ChoiceModel.for_generator(sample_uniform(ModelKind.DEFAULT, rng)) for _ in range(n)]


def test_shortest_derivation():
    engine = DerivationEngine(build_generator())
    rng = np.random.default_rng(1)
    for _ in range(50):
        datum = engine.generate(SHORTEST, rng)
        assert datum.feasible
        assert re.fullmatch(r"\d[+\-*/]\d", datum.output)
        assert (datum.features.length, datum.features.num_digits) == (3, 2)


def test_forced_recursion_is_infeasible():
    limits = ResourceLimits(max_nesting_depth=20, max_output_length=10_000)
    datum = generate(build_generator(), ALWAYS_NEST, limits, np.random.default_rng(0))

    assert not datum.feasible
    assert datum.output is None
    assert datum.features is None
    assert not datum.trace.complete
    assert max(d.depth for d in datum.trace.decisions) == 20


def test_random_models_produce_valid_sentences():
    engine = DerivationEngine(build_generator())
    rng = np.random.default_rng(7)
    feasible = 0
    for model in random_models(1000, seed=3):
        datum = engine.generate(model, rng)
        if datum.feasible:
            feasible += 1
            assert datum.trace.complete
            assert validate_expression(datum.output), datum.output
            assert 2 <= datum.features.num_digits <= datum.features.length - 1
    assert feasible > 300


def test_same_seed_same_output():
    engine = DerivationEngine(build_generator())
    model = random_models(1, seed=11)[0]
    a = [engine.generate(model, np.random.default_rng(5)).output for _ in range(3)]
    b = [engine.generate(model, np.random.default_rng(5)).output for _ in range(3)]
    assert a == b


def test_delegating_policy_matches_generate():
    generator = build_generator()
    limits = ResourceLimits()
    for model in random_models(20, seed=2):
        plain = generate(generator, model, limits, np.random.default_rng(99))
        delegated = generate_with_policy(
            generator, FunctionPolicy(lambda cp, depth, step: None, model), limits, np.random.default_rng(99)
        )
        via_model_policy = generate_with_policy(generator, ModelPolicy(model), limits, np.random.default_rng(99))
        assert plain.output == delegated.output == via_model_policy.output
        assert plain.trace == delegated.trace


def test_forced_first_operand_parenthesizes():
    def chooser(cp, depth, step):
        return 1 if step == 0 else None

    datum = generate_with_policy(
        build_generator(), FunctionPolicy(chooser, SHORTEST), ResourceLimits(), np.random.default_rng(0)
    )
    assert datum.output.startswith("(")
    assert datum.trace.decisions[0] == Decision(OPERAND_KIND.id, 0, 1)


def test_replay_reproduces_output():
    engine = DerivationEngine(build_generator())
    rng = np.random.default_rng(123)
    replayed = 0
    models = iter(random_models(20_000, seed=8))
    while replayed < 10_000:
        model = next(models)
        for _ in range(4):
            datum = engine.generate(model, rng)
            if not datum.feasible:
                continue
            assert engine.replay(datum.trace).output == datum.output
            replayed += 1


def test_replayed_prefix_starts_trace():
    engine = DerivationEngine(build_generator())
    model = random_models(1, seed=4)[0]
    original = engine.generate(model, np.random.default_rng(10))
    prefix = original.trace.prefix(3)

    datum = engine.generate_with_policy(ReplayPolicy(prefix, model), np.random.default_rng(77))
    assert datum.trace.decisions[:3] == prefix


def test_replay_mismatch_raises():
    engine = DerivationEngine(build_generator())
    trace = DecisionTrace((Decision(choice_point=2, depth=0, alternative=0),), complete=True)
    with pytest.raises(ConfigurationError):
        engine.replay(trace)


def test_truncated_replay_without_model_raises():
    engine = DerivationEngine(build_generator())
    datum = engine.generate(SHORTEST, np.random.default_rng(0))
    with pytest.raises(ConfigurationError):
        engine.replay(DecisionTrace(datum.trace.prefix(1), complete=False))


def test_forced_alternative_out_of_range():
    policy = FunctionPolicy(lambda cp, depth, step: 2 if step == 0 else None, SHORTEST)
    with pytest.raises(ConfigurationError):
        generate_with_policy(build_generator(), policy, ResourceLimits(), np.random.default_rng(0))


def test_schema_mismatch_is_configuration_error():
    generator = build_generator()
    reordered = tuple(reversed(generator.parameterized_points))
    params = ChoiceModelParams(values=(0.5,) * 8, model_kind=ModelKind.DEFAULT)
    model = ChoiceModel(params, reordered)
    with pytest.raises(ConfigurationError):
        DerivationEngine(generator).generate(model, np.random.default_rng(0))

    with pytest.raises(ConfigurationError):
        ChoiceModel(ChoiceModelParams(values=(0.5,) * 7, model_kind=ModelKind.DEFAULT), generator.parameterized_points)


def test_output_never_exceeds_length_limit():
    limits = ResourceLimits(max_nesting_depth=20, max_output_length=30)
    engine = DerivationEngine(build_generator(), limits)
    rng = np.random.default_rng(21)
    infeasible = 0
    for model in random_models(300, seed=5):
        datum = engine.generate(model, rng)
        if datum.feasible:
            assert len(datum.output) <= 30
        else:
            infeasible += 1
    assert infeasible > 0


def test_limits_must_be_positive():
    with pytest.raises(ValidationError):
        ResourceLimits(max_nesting_depth=0)
    with pytest.raises(ValidationError):
        ResourceLimits(max_output_length=-1)


class DepthCheckingGenerator(ExprGenerator):
    """Asserts that the context depth matches the unclosed parentheses of the partial output."""

    def _operand(self, ctx):
        partial = ctx.output()
        assert ctx.depth == partial.count("(") - partial.count(")")
        super()._operand(ctx)


def test_depth_matches_unclosed_parentheses():
    engine = DerivationEngine(DepthCheckingGenerator())
    rng = np.random.default_rng(31)
    for model in random_models(200, seed=6):
        datum = engine.generate(model, rng)
        if datum.feasible:
            assert datum.trace.decisions[0].depth == 0


def test_horizon_cuts_off_only_long_derivations():
    engine = DerivationEngine(build_generator())
    cut = 0
    for index, model in enumerate(random_models(400, seed=12)):
        full = engine.generate_with_policy(ModelPolicy(model), np.random.default_rng(index))
        bounded = engine.generate_with_policy(ModelPolicy(model), np.random.default_rng(index), horizon=50)
        if bounded.cut_off:
            cut += 1
            assert bounded.output is None and bounded.features is None
            assert not bounded.trace.complete
            assert full.trace.decisions[:len(bounded.trace)] == bounded.trace.decisions
            assert not full.feasible or full.features.length > 50
        else:
            assert bounded.output == full.output
            assert bounded.trace == full.trace
    assert cut > 0


def test_horizon_is_reached_before_the_nesting_limit():
    engine = DerivationEngine(build_generator())
    datum = engine.generate_with_policy(ModelPolicy(ALWAYS_NEST), np.random.default_rng(0), horizon=50)
    assert datum.cut_off
    assert max(d.depth for d in datum.trace.decisions) < 20

    base = default_model([0.5] * 8)
    rng = np.random.default_rng(3)
    for _ in range(3000):
        datum = engine.generate_with_policy(ModelPolicy(base), rng, horizon=50)
        assert datum.feasible or datum.cut_off
