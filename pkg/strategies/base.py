"""
Search strategy interface.

Every diversity-search method implements `_search` against a SearchSession;
`run` wires up the engine, random stream and timing.
"""

import logging
import time
from abc import ABC, abstractmethod
from typing import Optional

import numpy as np

from choice_models.models import ChoiceModel, ChoiceModelParams
from engine.derivation import DerivationEngine, ResourceLimits
from features.space import DEFAULT_CUBE, PreferenceHypercube
from generators.base import GeneratorProgram
from generators.expr_generator import build_generator
from strategies.config import MethodFamily, StrategyConfig
from strategies.models import RunResult
from strategies.session import SearchSession

logger = logging.getLogger(__name__)


class SearchStrategy(ABC):
    """
    Abstract base class for search strategies.

    Design Rules:
    1. All randomness comes from the session's stream, seeded by config.seed
    2. Every generation attempt goes through the session, never the engine directly
    3. A run never consumes more attempts than its budget
    """

    family: MethodFamily

    def __init__(
        self,
        config: StrategyConfig,
        cube: PreferenceHypercube = DEFAULT_CUBE,
        generator: Optional[GeneratorProgram] = None,
        limits: Optional[ResourceLimits] = None,
    ):
        if config.family is not self.family:
            raise ValueError(
                f"{type(self).__name__} runs {self.family.value} methods, got {config.method_name}"
            )
        self.config = config
        self.cube = cube
        self.generator = generator if generator is not None else build_generator()
        self.limits = limits if limits is not None else ResourceLimits()

    def model(self, params: ChoiceModelParams) -> ChoiceModel:
        return ChoiceModel(params, self.generator.parameterized_points)

    @property
    def schema(self):
        return self.generator.parameterized_points

    @abstractmethod
    def _search(self, session: SearchSession) -> None:
        """Consume the session's budget."""

    def run(self) -> RunResult:
        engine = DerivationEngine(self.generator, self.limits)
        rng = np.random.default_rng(self.config.seed)
        session = SearchSession(self.config, engine, self.cube, rng)

        start = time.perf_counter()
        self._search(session)
        wall_time = time.perf_counter() - start

        result = session.finish(wall_time)
        logger.info(
            f"{self.config.label}: fshc={result.fshc:.1f}% attempts={result.attempts} "
            f"infeasible={result.infeasible} wall_time={wall_time:.2f}s"
        )
        return result
