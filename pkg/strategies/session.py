"""
Search session.

Bookkeeping shared by every strategy run: the attempt budget, the density
archive, outcome tallies and the per-sample log.
"""

import logging
import time
from typing import List, Optional

import numpy as np

from choice_models.models import ChoiceModel
from engine.derivation import DerivationEngine, GeneratedDatum
from engine.policies import DecisionPolicy, ModelPolicy
from features.archive import DensityArchive
from features.space import PreferenceHypercube, Region, SampleStatus, classify
from strategies.config import StrategyConfig
from strategies.models import RunResult, SampleRecord

logger = logging.getLogger(__name__)


class BudgetExhausted(Exception):
    """Raised when a strategy asks for more attempts than its budget allows."""


class SearchSession:
    """
    Owns one run's archive and tallies. Single writer, strictly sequential.

    Generating and recording are separate steps so that searches can defer
    archive updates; every generated datum must eventually be recorded.
    """

    def __init__(
        self,
        config: StrategyConfig,
        engine: DerivationEngine,
        cube: PreferenceHypercube,
        rng: np.random.Generator,
    ):
        self.config = config
        self.engine = engine
        self.cube = cube
        self.rng = rng
        self.archive = DensityArchive(cube)
        self.attempts = 0
        self.preferred = 0
        self.outside = 0
        self.infeasible = 0
        self.parameter_draws = 0
        self.final_attempts: List[int] = []
        self._log: List[SampleRecord] = []
        self._started = time.perf_counter()

    @property
    def budget(self) -> int:
        return self.config.budget

    @property
    def remaining(self) -> int:
        return self.budget - self.attempts

    @property
    def exhausted(self) -> bool:
        return self.attempts >= self.budget

    def status_of(self, datum: GeneratedDatum) -> SampleStatus:
        # cut off at the cube's length bound: no completion can be PREFERRED
        if datum.cut_off:
            return SampleStatus.OUTSIDE
        if not datum.feasible:
            return SampleStatus.INFEASIBLE
        if classify(datum.features, self.cube) is Region.PREFERRED:
            return SampleStatus.PREFERRED
        return SampleStatus.OUTSIDE

    def note_parameter_draw(self) -> None:
        self.parameter_draws += 1

    def generate(
        self,
        model: Optional[ChoiceModel] = None,
        policy: Optional[DecisionPolicy] = None,
        cut_off_beyond_cube: bool = False,
    ) -> tuple[int, GeneratedDatum]:
        """
        Consume one attempt of the budget.

        Args:
            model: Choice model deciding every parameterized point
            policy: Decision policy, used instead of `model` when given
            cut_off_beyond_cube: Stop the derivation once its output can only
                end longer than the cube allows; it is then recorded OUTSIDE

        Returns:
            (attempt index, datum)

        Raises:
            BudgetExhausted: If no attempts remain
        """
        if self.exhausted:
            raise BudgetExhausted(f"Budget of {self.budget} attempts already consumed")
        if cut_off_beyond_cube:
            if policy is None:
                policy = ModelPolicy(model)
            datum = self.engine.generate_with_policy(policy, self.rng, horizon=self.cube.length_range[1])
        elif policy is not None:
            datum = self.engine.generate_with_policy(policy, self.rng)
        else:
            datum = self.engine.generate(model, self.rng)
        attempt = self.attempts
        self.attempts += 1
        return attempt, datum

    def record(self, attempt: int, datum: GeneratedDatum) -> SampleStatus:
        """Tally a generated datum, add it to the archive if PREFERRED and log it."""
        status = self.status_of(datum)
        fv = datum.features
        length = num_digits = None
        if fv is not None:
            if fv.num_digits > fv.length:
                raise AssertionError(f"num_digits {fv.num_digits} exceeds length {fv.length}")
            length, num_digits = fv.length, fv.num_digits

        if status is SampleStatus.INFEASIBLE:
            self.infeasible += 1
        elif status is SampleStatus.OUTSIDE:
            self.outside += 1
        else:
            self.archive.record(fv)
            self.preferred += 1
        self._log.append(
            SampleRecord(
                attempt=attempt,
                status=status,
                length=length,
                num_digits=num_digits,
                fshc_so_far=self.archive.fshc(),
                elapsed_s=time.perf_counter() - self._started,
            )
        )
        return status

    def sample(self, model: ChoiceModel) -> tuple[GeneratedDatum, SampleStatus]:
        """Generate and immediately record one datum from `model`."""
        attempt, datum = self.generate(model=model)
        return datum, self.record(attempt, datum)

    def mark_final(self, attempt: int) -> None:
        self.final_attempts.append(attempt)

    def finish(self, wall_time: float) -> RunResult:
        if self.preferred + self.outside + self.infeasible != self.attempts:
            raise AssertionError(
                f"{self.attempts} attempts generated but "
                f"{self.preferred + self.outside + self.infeasible} recorded"
            )
        return RunResult(
            method=self.config.method_name,
            model_kind=self.config.model_kind,
            seed=self.config.seed,
            budget=self.budget,
            fshc=self.archive.fshc(),
            wall_time=wall_time,
            feasible_preferred=self.preferred,
            feasible_outside=self.outside,
            infeasible=self.infeasible,
            parameter_draws=self.parameter_draws,
            sample_log=self._log,
            archive=self.archive,
            final_attempts=list(self.final_attempts),
        )
