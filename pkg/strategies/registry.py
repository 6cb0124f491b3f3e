"""
Strategy registry.

Explicit mapping from method family to strategy class and to its run
function, used by the experiment runner and the CLI.
"""

from typing import Callable, Dict, Type

from strategies.base import SearchStrategy
from strategies.config import MethodFamily, StrategyConfig
from strategies.hill_climb import HillClimbStrategy, run_hillclimb
from strategies.models import RunResult
from strategies.nmcs import NmcsStrategy, run_nmcs
from strategies.random_sampling import (
    RandFreqStrategy,
    RandMFreqLHSStrategy,
    RandMFreqStrategy,
    RandOnceStrategy,
    run_rand_freq,
    run_rand_mfreq,
    run_rand_mfreq_lhs,
    run_rand_once,
)

Runner = Callable[..., RunResult]

_STRATEGIES: Dict[MethodFamily, Type[SearchStrategy]] = {}
_RUNNERS: Dict[MethodFamily, Runner] = {}


def register_strategy(strategy_class: Type[SearchStrategy], runner: Runner) -> None:
    """
    Register a strategy class and its run function under the class's family.

    Raises:
        ValueError: If the family already has a strategy
    """
    if strategy_class.family in _STRATEGIES:
        raise ValueError(f"Strategy for '{strategy_class.family.value}' is already registered")
    _STRATEGIES[strategy_class.family] = strategy_class
    _RUNNERS[strategy_class.family] = runner


def get_strategy(family: MethodFamily) -> Type[SearchStrategy]:
    if family not in _STRATEGIES:
        raise ValueError(
            f"Unknown method family: {family}. Available: {[f.value for f in _STRATEGIES]}"
        )
    return _STRATEGIES[family]


def get_runner(family: MethodFamily) -> Runner:
    if family not in _RUNNERS:
        raise ValueError(
            f"Unknown method family: {family}. Available: {[f.value for f in _RUNNERS]}"
        )
    return _RUNNERS[family]


def run_strategy(config: StrategyConfig, **kwargs) -> RunResult:
    """Run the strategy selected by `config.family`."""
    return get_runner(config.family)(config, **kwargs)


for _cls, _runner in (
    (RandOnceStrategy, run_rand_once),
    (RandFreqStrategy, run_rand_freq),
    (RandMFreqStrategy, run_rand_mfreq),
    (RandMFreqLHSStrategy, run_rand_mfreq_lhs),
    (NmcsStrategy, run_nmcs),
    (HillClimbStrategy, run_hillclimb),
):
    register_strategy(_cls, _runner)
