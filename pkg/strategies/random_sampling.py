"""
Random-resampling strategies.

rand-once draws one uniform parameter vector for the whole budget,
rand-freqN redraws every N attempts, rand-mfreqN additionally redraws right
after an infeasible attempt, and rand-mfreqN-LHSB takes its draws from
Latin Hypercube batches of B vectors.
"""

from collections import deque
from typing import Deque

from choice_models.models import ChoiceModelParams
from choice_models.sampling import lhs_batch, sample_uniform
from features.space import SampleStatus
from strategies.base import SearchStrategy
from strategies.config import MethodFamily
from strategies.session import SearchSession


class ResamplingStrategy(SearchStrategy):
    """Shared loop of the random-sampling family."""

    resample_on_infeasible = False

    def _period(self) -> int:
        return self.config.resample_period

    def _next_params(self, session: SearchSession) -> ChoiceModelParams:
        return sample_uniform(self.config.model_kind, session.rng, self.schema)

    def _search(self, session: SearchSession) -> None:
        period = self._period()
        model = None
        since_draw = 0
        while not session.exhausted:
            if model is None or since_draw >= period:
                model = self.model(self._next_params(session))
                session.note_parameter_draw()
                since_draw = 0
            _, status = session.sample(model)
            since_draw += 1
            if self.resample_on_infeasible and status is SampleStatus.INFEASIBLE:
                model = None


class RandOnceStrategy(ResamplingStrategy):
    family = MethodFamily.RAND_ONCE

    def _period(self) -> int:
        return self.config.budget


class RandFreqStrategy(ResamplingStrategy):
    family = MethodFamily.RAND_FREQ


class RandMFreqStrategy(ResamplingStrategy):
    family = MethodFamily.RAND_MFREQ
    resample_on_infeasible = True


class RandMFreqLHSStrategy(RandMFreqStrategy):
    """Draws are consumed in order from LHS batches; a new batch replaces an exhausted one."""

    family = MethodFamily.RAND_MFREQ_LHS

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._pending: Deque[ChoiceModelParams] = deque()

    def _next_params(self, session: SearchSession) -> ChoiceModelParams:
        if not self._pending:
            self._pending.extend(
                lhs_batch(self.config.model_kind, self.config.lhs_bins, session.rng, self.schema)
            )
        return self._pending.popleft()


def run_rand_once(config, **kwargs):
    return RandOnceStrategy(config, **kwargs).run()


def run_rand_freq(config, **kwargs):
    return RandFreqStrategy(config, **kwargs).run()


def run_rand_mfreq(config, **kwargs):
    return RandMFreqStrategy(config, **kwargs).run()


def run_rand_mfreq_lhs(config, **kwargs):
    return RandMFreqLHSStrategy(config, **kwargs).run()
