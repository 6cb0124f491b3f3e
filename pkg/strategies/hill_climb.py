"""
Hill climbing over choice-model parameters.

The current point is perturbed with Gaussian noise; the candidate samples a
batch of data and is discarded early if too many of them are infeasible or
land outside the hypercube. A surviving candidate replaces the current point
when a one-sided Mann-Whitney test says its preferred data fall into
sparser cells than the current point's most recent batch.

The reference is drawn fresh: once a candidate survives, the current point
samples a MIN-sized batch, recorded like any other data, right before the
test.
"""

import logging
from typing import List, Sequence, Tuple

from choice_models.models import ChoiceModelParams
from choice_models.sampling import perturb_gaussian, sample_uniform
from evaluation.statistics import Alternative, mann_whitney
from features.archive import DensityArchive
from features.space import FeatureVector, SampleStatus
from strategies.base import SearchStrategy
from strategies.config import MethodFamily
from strategies.session import SearchSession

logger = logging.getLogger(__name__)


def accept_candidate(
    archive: DensityArchive,
    candidate: Sequence[FeatureVector],
    reference: Sequence[FeatureVector],
    p_threshold: float,
) -> bool:
    """
    Compare cell counts, read from `archive` now, of the two batches' preferred data.

    Args:
        archive: Density archive of the run
        candidate: Preferred feature vectors sampled from the candidate point
        reference: Preferred feature vectors of the current point's latest batch
        p_threshold: Accept when the one-sided p-value is below this

    Returns:
        True if the candidate's counts are significantly lower
    """
    if not candidate:
        return False
    if not reference:
        return True
    result = mann_whitney(
        [archive.count(fv) for fv in candidate],
        [archive.count(fv) for fv in reference],
        Alternative.LESS,
    )
    logger.debug(f"U={result.u_statistic:.1f} p={result.p_value:.4f} ({result.method.value})")
    return result.p_value < p_threshold


class HillClimbStrategy(SearchStrategy):
    family = MethodFamily.HILLCLIMB

    def _sample_batch(
        self,
        session: SearchSession,
        params: ChoiceModelParams,
        abort_early: bool,
    ) -> Tuple[List[FeatureVector], bool]:
        """
        Sample one batch from `params`.

        Returns:
            (preferred feature vectors, survived)
        """
        cfg = self.config
        model = self.model(params)
        size = cfg.hc_max_samples if abort_early else cfg.hc_min_samples
        preferred: List[FeatureVector] = []
        sampled = infeasible = outside = 0
        while sampled < size:
            if session.exhausted:
                return preferred, False
            datum, status = session.sample(model)
            sampled += 1
            if status is SampleStatus.INFEASIBLE:
                infeasible += 1
            elif status is SampleStatus.OUTSIDE:
                outside += 1
            else:
                preferred.append(datum.features)

            if abort_early and sampled >= cfg.hc_min_samples:
                feasible = sampled - infeasible
                if infeasible / sampled > cfg.hc_max_infeasible_fraction:
                    return preferred, False
                if feasible and outside / feasible > cfg.hc_max_outside_fraction:
                    return preferred, False
        return preferred, True

    def _search(self, session: SearchSession) -> None:
        cfg = self.config
        current: ChoiceModelParams | None = None
        reference: List[FeatureVector] = []
        while not session.exhausted and not reference:
            current = sample_uniform(cfg.model_kind, session.rng, self.schema)
            session.note_parameter_draw()
            reference, _ = self._sample_batch(session, current, abort_early=False)

        accepted = compared = 0
        while not session.exhausted:
            candidate = perturb_gaussian(current, cfg.sigma, session.rng)
            session.note_parameter_draw()
            batch, survived = self._sample_batch(session, candidate, abort_early=True)
            if not survived:
                continue
            reference, _ = self._sample_batch(session, current, abort_early=False)
            compared += 1
            if accept_candidate(session.archive, batch, reference, cfg.hc_acceptance_p_value):
                current = candidate
                accepted += 1
        logger.debug(f"{cfg.label}: {accepted} of {compared} compared candidates accepted")


def run_hillclimb(config, **kwargs):
    return HillClimbStrategy(config, **kwargs).run()
