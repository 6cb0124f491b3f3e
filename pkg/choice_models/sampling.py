"""
Parameter-space samplers.

Uniform draws, Gaussian perturbation with clamping, and Latin Hypercube
batches over the unit cube of choice-model parameters.
"""

from typing import List, Optional, Tuple

import numpy as np
from scipy.stats import qmc

from choice_models.models import ChoiceModelParams, ModelKind, parameter_count
from engine.choice_points import ChoicePoint


def _params(values: np.ndarray, model_kind: ModelKind) -> ChoiceModelParams:
    return ChoiceModelParams(values=tuple(float(v) for v in values), model_kind=model_kind)


def sample_uniform(
    model_kind: ModelKind,
    rng: np.random.Generator,
    choice_points: Optional[Tuple[ChoicePoint, ...]] = None,
) -> ChoiceModelParams:
    """Each component drawn independently from U[0, 1)."""
    n = parameter_count(model_kind, choice_points)
    return _params(rng.random(n), model_kind)


def perturb_gaussian(params: ChoiceModelParams, sigma: float, rng: np.random.Generator) -> ChoiceModelParams:
    """
    Add N(0, sigma) noise to every component, then clamp to [0, 1].

    Raises:
        ValueError: If sigma is not positive
    """
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    values = np.asarray(params.values, dtype=np.float64)
    noisy = values + rng.normal(0.0, sigma, size=values.shape)
    return _params(np.clip(noisy, 0.0, 1.0), params.model_kind)


def lhs_batch(
    model_kind: ModelKind,
    bins: int,
    rng: np.random.Generator,
    choice_points: Optional[Tuple[ChoicePoint, ...]] = None,
) -> List[ChoiceModelParams]:
    """
    Latin Hypercube batch of `bins` parameter vectors.

    Every dimension hits each of the `bins` equal-width subintervals of
    [0, 1] exactly once, at a uniform position inside the subinterval.
    A single bin is a plain uniform draw and consumes `rng` like
    `sample_uniform`.

    Raises:
        ValueError: If bins < 1
    """
    if bins < 1:
        raise ValueError(f"bins must be at least 1, got {bins}")
    if bins == 1:
        return [sample_uniform(model_kind, rng, choice_points)]
    n = parameter_count(model_kind, choice_points)
    sampler = qmc.LatinHypercube(d=n, seed=rng)
    return [_params(row, model_kind) for row in sampler.random(bins)]
