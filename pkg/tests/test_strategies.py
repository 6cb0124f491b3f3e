"""
Tests for the search strategies.
"""

import numpy as np
import pytest
from scipy.stats import chi2_contingency

from batch.exports import export_scatter, read_scatter
from choice_models.models import ChoiceModel, ModelKind, constant_params
from engine.derivation import DerivationEngine
from engine.errors import ConfigurationError
from features.archive import DensityArchive
from features.space import DEFAULT_CUBE, FeatureVector, SampleStatus
from generators.expr_generator import build_generator
from strategies import hill_climb
from strategies.config import MethodFamily, NmcsUpdate, StrategyConfig
from strategies.hill_climb import HillClimbStrategy, accept_candidate, run_hillclimb
from strategies.nmcs import NmcsStrategy, rollout_score, run_nmcs
from strategies.random_sampling import (
    RandOnceStrategy,
    run_rand_freq,
    run_rand_mfreq,
    run_rand_mfreq_lhs,
    run_rand_once,
)
from strategies.registry import get_runner, get_strategy, register_strategy, run_strategy

ALL_METHODS = [
    ("rand-once", ModelKind.DEFAULT),
    ("rand-freq1", ModelKind.REC_DEPTH5),
    ("rand-freq1", ModelKind.DEFAULT),
    ("rand-mfreq10", ModelKind.REC_DEPTH5),
    ("rand-mfreq5-LHS10", ModelKind.REC_DEPTH5),
    ("rand-mfreq10-LHS30", ModelKind.REC_DEPTH5),
    ("nmcs-2-direct", ModelKind.DEFAULT),
    ("nmcs-4-batch", ModelKind.DEFAULT),
    ("hillclimb-4-20", ModelKind.REC_DEPTH5),
]


def run_method(name, model=ModelKind.DEFAULT, budget=300, seed=1, **overrides):
    return run_strategy(StrategyConfig.from_method_name(name, model, budget=budget, seed=seed, **overrides))


def log_signature(result):
    return [(r.attempt, r.status, r.length, r.num_digits, r.fshc_so_far) for r in result.sample_log]


@pytest.mark.parametrize(
    "name,family",
    [
        ("rand-once", MethodFamily.RAND_ONCE),
        ("rand-freq1", MethodFamily.RAND_FREQ),
        ("rand-mfreq10", MethodFamily.RAND_MFREQ),
        ("rand-mfreq5-LHS10", MethodFamily.RAND_MFREQ_LHS),
        ("nmcs-4-direct", MethodFamily.NMCS),
        ("nmcs-2-batch", MethodFamily.NMCS),
        ("hillclimb-4-20", MethodFamily.HILLCLIMB),
    ],
)
def test_method_names_round_trip(name, family):
    config = StrategyConfig.from_method_name(name)
    assert config.family is family
    assert config.method_name == name


def test_method_name_fields():
    lhs = StrategyConfig.from_method_name("rand-mfreq10-LHS30", "RecDepth5")
    assert (lhs.resample_period, lhs.lhs_bins, lhs.model_kind) == (10, 30, ModelKind.REC_DEPTH5)
    nmcs = StrategyConfig.from_method_name("nmcs-4-batch")
    assert (nmcs.nmcs_sample_size, nmcs.nmcs_update) == (4, NmcsUpdate.BATCH)
    hc = StrategyConfig.from_method_name("hillclimb-4-20")
    assert (hc.hc_min_samples, hc.hc_max_samples) == (4, 20)
    assert hc.sigma == 0.05
    assert hc.budget == 10_000


@pytest.mark.parametrize("name", ["rand-twice", "rand-freq0", "nmcs-0-direct", "nmcs-2-lazy", "hillclimb-20-4", "", "rand-freq"])
def test_invalid_method_names(name):
    with pytest.raises(ConfigurationError):
        StrategyConfig.from_method_name(name)


def test_config_is_strict():
    with pytest.raises(ValueError):
        StrategyConfig(family=MethodFamily.RAND_FREQ)
    with pytest.raises(ValueError):
        StrategyConfig(family=MethodFamily.RAND_ONCE, budget=0)
    with pytest.raises(ValueError):
        StrategyConfig(family=MethodFamily.RAND_ONCE, colour="blue")


def test_strategy_rejects_other_family():
    with pytest.raises(ValueError):
        RandOnceStrategy(StrategyConfig.from_method_name("rand-freq1"))
    assert get_strategy(MethodFamily.NMCS) is NmcsStrategy


@pytest.mark.parametrize("name,model", ALL_METHODS)
def test_run_invariants(name, model):
    result = run_method(name, model, budget=300)

    assert result.attempts == 300
    assert len(result.sample_log) == 300
    assert sorted(r.attempt for r in result.sample_log) == list(range(300))
    assert result.archive.total_recorded == result.feasible_preferred
    assert result.fshc == result.archive.fshc()
    assert len(result.covered_cells) <= 651
    assert result.preferred_ratio == pytest.approx(100.0 * result.feasible_preferred / 300)

    fshc = [r.fshc_so_far for r in result.sample_log]
    assert all(b >= a for a, b in zip(fshc, fshc[1:]))
    for r in result.sample_log:
        if r.length is not None:
            assert 2 <= r.num_digits <= r.length - 1
        else:
            assert r.num_digits is None
            assert r.status is SampleStatus.INFEASIBLE or name.startswith("nmcs")


@pytest.mark.parametrize("name,model", ALL_METHODS)
def test_runs_are_reproducible(name, model):
    a = run_method(name, model, budget=200, seed=7)
    b = run_method(name, model, budget=200, seed=7)
    assert log_signature(a) == log_signature(b)
    assert a.covered_cells == b.covered_cells


def test_rand_once_single_attempt():
    result = run_method("rand-once", budget=1)
    assert result.attempts == 1
    assert result.parameter_draws == 1
    assert len(result.covered_cells) <= 1


def test_full_period_freq_equals_rand_once():
    once = run_method("rand-once", budget=150, seed=3)
    freq = run_method("rand-freq150", budget=150, seed=3)
    assert log_signature(once) == log_signature(freq)
    assert once.parameter_draws == freq.parameter_draws == 1


def test_freq1_draws_per_attempt():
    result = run_method("rand-freq1", ModelKind.REC_DEPTH5, budget=100)
    assert result.parameter_draws == 100


def expected_mfreq_draws(result, period):
    draws = since = 0
    fresh = True
    for r in result.sample_log:
        if fresh or since >= period:
            draws += 1
            since = 0
            fresh = False
        since += 1
        if r.status is SampleStatus.INFEASIBLE:
            fresh = True
    return draws


@pytest.mark.parametrize("name,period", [("rand-mfreq10", 10), ("rand-mfreq5-LHS10", 5)])
def test_mfreq_resamples_after_infeasible(name, period):
    result = run_method(name, ModelKind.DEFAULT, budget=400, seed=5)
    assert result.infeasible > 0
    assert result.parameter_draws == expected_mfreq_draws(result, period)


def test_rollout_score_order():
    infeasible = rollout_score(SampleStatus.INFEASIBLE, 0)
    outside = rollout_score(SampleStatus.OUTSIDE, 0)
    dense = rollout_score(SampleStatus.PREFERRED, 9)
    sparse = rollout_score(SampleStatus.PREFERRED, 0)
    assert infeasible < outside < dense < sparse


@pytest.mark.parametrize("update", ["direct", "batch"])
def test_nmcs_constructions(update):
    result = run_method(f"nmcs-2-{update}", budget=600, seed=2)
    assert result.parameter_draws == 0
    assert len(result.final_attempts) > 0
    assert len(set(result.final_attempts)) == len(result.final_attempts)
    by_attempt = {r.attempt: r for r in result.sample_log}
    finals = [by_attempt[a] for a in result.final_attempts]
    feasible_finals = sum(r.feasible for r in finals)
    assert feasible_finals >= 0.75 * len(finals)


def test_nmcs_prefers_feasible_data():
    nmcs = run_method("nmcs-4-direct", budget=1000, seed=4)
    freq = run_method("rand-freq1", ModelKind.DEFAULT, budget=1000, seed=4)
    assert nmcs.infeasible == 0
    assert freq.infeasible > 0
    assert any(r.status is SampleStatus.OUTSIDE and r.length is None for r in nmcs.sample_log)


@pytest.mark.parametrize("update", ["direct", "batch"])
def test_nmcs_without_cutoff_restarts_on_infeasible_rollouts(update, monkeypatch):
    strategies = []
    original = NmcsStrategy._search

    def keep(self, session):
        strategies.append(self)
        original(self, session)

    monkeypatch.setattr(NmcsStrategy, "_search", keep)
    result = run_method(f"nmcs-2-{update}", budget=1500, seed=9, nmcs_rollout_cutoff=False)

    assert result.infeasible > 0
    assert result.attempts == 1500
    assert strategies[0].restarts > 0
    by_attempt = {r.attempt: r for r in result.sample_log}
    assert all(by_attempt[a].status is not SampleStatus.INFEASIBLE for a in result.final_attempts)


def reference_archive():
    archive = DensityArchive(DEFAULT_CUBE)
    reference = [FeatureVector(20, 10), FeatureVector(21, 10), FeatureVector(22, 10), FeatureVector(23, 10)]
    for fv in reference:
        for _ in range(5):
            archive.record(fv)
    return archive, reference


def test_accept_candidate_in_sparse_cells():
    archive, reference = reference_archive()
    candidate = [FeatureVector(30, 5), FeatureVector(31, 5), FeatureVector(32, 5), FeatureVector(33, 5)]
    for fv in candidate:
        archive.record(fv)
    assert accept_candidate(archive, candidate, reference, 0.20)
    assert accept_candidate(archive, candidate, reference, 1 / 70 + 1e-9)
    assert not accept_candidate(archive, candidate, reference, 1 / 70)


def test_reject_equal_batches_and_empty_candidates():
    archive, reference = reference_archive()
    assert not accept_candidate(archive, list(reference), reference, 0.20)
    assert not accept_candidate(archive, [], reference, 0.20)


def test_hillclimb_run():
    result = run_method("hillclimb-4-20", ModelKind.REC_DEPTH5, budget=800, seed=6)
    assert result.attempts == 800
    assert result.parameter_draws >= 1
    assert result.feasible_preferred > 0


def test_hillclimb_candidates_stay_in_unit_cube(monkeypatch):
    seen = []
    original = HillClimbStrategy._sample_batch

    def spy(self, session, params, abort_early):
        seen.append(np.asarray(params.values))
        return original(self, session, params, abort_early)

    monkeypatch.setattr(HillClimbStrategy, "_sample_batch", spy)
    run_method("hillclimb-4-20", ModelKind.REC_DEPTH5, budget=400, seed=8)
    assert len(seen) > 5
    assert all(v.min() >= 0.0 and v.max() <= 1.0 and v.size == 16 for v in seen)


def test_hillclimb_compares_against_fresh_current_batch(monkeypatch):
    events = []
    original_batch = HillClimbStrategy._sample_batch
    original_accept = hill_climb.accept_candidate

    def batch_spy(self, session, params, abort_early):
        preferred, survived = original_batch(self, session, params, abort_early)
        events.append(("batch", params, abort_early, list(preferred)))
        return preferred, survived

    def accept_spy(archive, candidate, reference, p_threshold):
        accepted = original_accept(archive, candidate, reference, p_threshold)
        events.append(("compare", list(candidate), list(reference), accepted))
        return accepted

    monkeypatch.setattr(HillClimbStrategy, "_sample_batch", batch_spy)
    monkeypatch.setattr(hill_climb, "accept_candidate", accept_spy)
    run_method("hillclimb-4-20", ModelKind.REC_DEPTH5, budget=2000, seed=6)

    first_candidate = next(i for i, e in enumerate(events) if e[0] == "batch" and e[2])
    current = events[first_candidate - 1][1]
    comparisons = accepted = 0
    for i, event in enumerate(events):
        if event[0] != "compare":
            continue
        _, candidate, reference, ok = event
        candidate_batch, reference_batch = events[i - 2], events[i - 1]
        assert candidate_batch[2] and not reference_batch[2]
        assert reference_batch[1] == current
        assert reference == reference_batch[3]
        assert candidate == candidate_batch[3]
        comparisons += 1
        if ok:
            current = candidate_batch[1]
            accepted += 1
    assert comparisons > 10
    assert accepted > 0


def test_runners_are_registered_per_family():
    assert get_runner(MethodFamily.RAND_ONCE) is run_rand_once
    assert get_runner(MethodFamily.RAND_MFREQ_LHS) is run_rand_mfreq_lhs
    assert get_runner(MethodFamily.NMCS) is run_nmcs
    assert get_runner(MethodFamily.HILLCLIMB) is run_hillclimb
    with pytest.raises(ValueError):
        get_runner("rand-sometimes")
    with pytest.raises(ValueError):
        register_strategy(NmcsStrategy, run_nmcs)

    mfreq = StrategyConfig.from_method_name("rand-mfreq10", ModelKind.REC_DEPTH5, budget=120, seed=2)
    freq = StrategyConfig.from_method_name("rand-freq10", ModelKind.REC_DEPTH5, budget=120, seed=2)
    assert log_signature(run_rand_mfreq(mfreq)) == log_signature(run_strategy(mfreq))
    assert log_signature(run_rand_freq(freq)) == log_signature(run_strategy(freq))
    with pytest.raises(ValueError):
        run_nmcs(mfreq)


def test_single_bin_lhs_equals_mfreq():
    lhs = run_method("rand-mfreq10-LHS1", ModelKind.REC_DEPTH5, budget=400, seed=12)
    mfreq = run_method("rand-mfreq10", ModelKind.REC_DEPTH5, budget=400, seed=12)
    assert log_signature(lhs) == log_signature(mfreq)
    assert lhs.parameter_draws == mfreq.parameter_draws


LENGTH_BINS = [5, 9, 14, 24, 50, "beyond"]


def length_bin(preferred, length):
    if not preferred:
        return "beyond"
    return next(upper for upper in LENGTH_BINS[:-1] if length <= upper)


@pytest.mark.slow
def test_single_sample_nmcs_follows_base_model():
    result = run_method("nmcs-1-direct", budget=300_000, seed=13)
    by_attempt = {r.attempt: r for r in result.sample_log}
    finals = [by_attempt[a] for a in result.final_attempts[:10_000]]
    assert len(finals) == 10_000
    nmcs_bins = [length_bin(r.status is SampleStatus.PREFERRED, r.length) for r in finals]

    engine = DerivationEngine(build_generator())
    base = ChoiceModel.for_generator(constant_params(ModelKind.DEFAULT, 0.5))
    rng = np.random.default_rng(14)
    plain_bins = []
    for _ in range(10_000):
        datum = engine.generate(base, rng)
        preferred = datum.feasible and DEFAULT_CUBE.contains(datum.features)
        plain_bins.append(length_bin(preferred, datum.features.length if preferred else None))

    table = np.array([
        [nmcs_bins.count(label) for label in LENGTH_BINS],
        [plain_bins.count(label) for label in LENGTH_BINS],
    ])
    assert chi2_contingency(table).pvalue > 0.01


def short_digit_heavy_cells(path):
    points = read_scatter(path)
    region = points[(points.length < 15) & (points.num_digits > 0.8 * points.length)]
    return set(zip(region.length, region.num_digits))


@pytest.mark.slow
def test_rand_once_misses_short_digit_heavy_cells(tmp_path):
    once, freq = [], []
    for seed in range(10):
        for name, model, sink in (
            ("rand-once", ModelKind.DEFAULT, once),
            ("rand-freq1", ModelKind.REC_DEPTH5, freq),
        ):
            result = run_method(name, model, budget=10_000, seed=seed)
            sink.append(len(short_digit_heavy_cells(export_scatter(result, tmp_path / f"{name}-{seed}.csv"))))
    assert np.mean(once) < np.mean(freq)
