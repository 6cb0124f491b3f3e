"""
Nested Monte-Carlo search (level 1).

Builds each emitted datum decision by decision. At every parameterized
choice point past the committed prefix, S rollouts replay the prefix and
finish the derivation with the base model; the rollout with the best
feature-space fitness fixes the next decision. Rollouts count against the
budget.

Fitness order: INFEASIBLE < OUTSIDE < PREFERRED in a dense cell < PREFERRED
in a sparse cell. In direct mode every rollout is recorded as soon as it is
scored; in batch mode the archive stays frozen for the whole construction
and its rollouts are recorded afterwards.

A rollout stops as soon as its output can only end longer than the cube
allows and is scored OUTSIDE; completing it could not make it PREFERRED.
For expressions every nesting level adds at least four characters to the
engine's length bound, so with the default cube and limits a rollout is cut
off before it can exceed the nesting limit. If every candidate at a decision
is infeasible anyway (cut-off disabled, or a cube longer than four
characters per allowed nesting level),
the construction starts over from an empty prefix.
"""

import logging
from typing import List, Optional, Tuple

from choice_models.models import ChoiceModel, constant_params
from engine.choice_points import Decision
from engine.derivation import GeneratedDatum
from engine.policies import ReplayPolicy
from features.space import SampleStatus
from strategies.base import SearchStrategy
from strategies.config import MethodFamily, NmcsUpdate
from strategies.session import SearchSession

logger = logging.getLogger(__name__)

Score = Tuple[int, ...]

INFEASIBLE_SCORE: Score = (0,)


def rollout_score(status: SampleStatus, cell_count: int) -> Score:
    """Higher is better."""
    if status is SampleStatus.INFEASIBLE:
        return INFEASIBLE_SCORE
    if status is SampleStatus.OUTSIDE:
        return (1,)
    return (2, -cell_count)


class NmcsStrategy(SearchStrategy):
    family = MethodFamily.NMCS

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._parameterized_ids = {cp.id for cp in self.schema}
        self._base: Optional[ChoiceModel] = None
        self.restarts = 0

    @property
    def direct(self) -> bool:
        return self.config.nmcs_update is NmcsUpdate.DIRECT

    def _search(self, session: SearchSession) -> None:
        self._base = self.model(
            constant_params(self.config.model_kind, self.config.nmcs_base_value, self.schema)
        )
        constructions = 0
        while not session.exhausted:
            final = self._construct(session)
            if final is not None:
                session.mark_final(final)
                constructions += 1
        logger.debug(
            f"{self.config.label}: {constructions} constructions completed, {self.restarts} restarted"
        )

    def _next_parameterized(self, decisions: Tuple[Decision, ...], start: int) -> Optional[int]:
        for index in range(start, len(decisions)):
            if decisions[index].choice_point in self._parameterized_ids:
                return index
        return None

    def _construct(self, session: SearchSession) -> Optional[int]:
        """
        Emit one datum.

        Returns:
            Attempt index of the final datum, or None if the budget ran out first
        """
        prefix: Tuple[Decision, ...] = ()
        pending: List[Tuple[int, GeneratedDatum]] = []
        try:
            while True:
                if session.remaining < 1:
                    return None
                attempt, datum, score = self._best_rollout(session, prefix, pending)
                if score == INFEASIBLE_SCORE:
                    logger.debug(f"All rollouts infeasible after {len(prefix)} decisions, restarting")
                    self.restarts += 1
                    prefix = ()
                    continue
                decisions = datum.trace.decisions
                commit = self._next_parameterized(decisions, len(prefix))
                if commit is None or self._next_parameterized(decisions, commit + 1) is None:
                    return attempt
                prefix = decisions[:commit + 1]
        finally:
            for attempt, datum in pending:
                session.record(attempt, datum)

    def _best_rollout(
        self,
        session: SearchSession,
        prefix: Tuple[Decision, ...],
        pending: List[Tuple[int, GeneratedDatum]],
    ) -> Tuple[int, GeneratedDatum, Score]:
        policy = ReplayPolicy(prefix, self._base)
        cut_off = self.config.nmcs_rollout_cutoff
        best: List[Tuple[int, GeneratedDatum]] = []
        best_score: Optional[Score] = None
        for _ in range(self.config.nmcs_sample_size):
            if session.exhausted:
                break
            attempt, datum = session.generate(policy=policy, cut_off_beyond_cube=cut_off)
            status = session.status_of(datum)
            count = session.archive.count(datum.features) if status is SampleStatus.PREFERRED else 0
            score = rollout_score(status, count)
            if self.direct:
                session.record(attempt, datum)
            else:
                pending.append((attempt, datum))

            if best_score is None or score > best_score:
                best, best_score = [(attempt, datum)], score
            elif score == best_score:
                best.append((attempt, datum))

        chosen = best[0] if len(best) == 1 else best[int(session.rng.integers(len(best)))]
        return chosen[0], chosen[1], best_score


def run_nmcs(config, **kwargs):
    return NmcsStrategy(config, **kwargs).run()
