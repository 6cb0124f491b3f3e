"""
Coverage ceiling oracle.

Exhaustive reachability over the generator's grammar, restricted to the
preference hypercube. Gives the number of cells any search could cover at
most under the engine's resource limits.
"""

from typing import Optional, Set, Tuple

from features.space import PreferenceHypercube


def achievable_cells(cube: PreferenceHypercube, generator=None, limits=None) -> Set[Tuple[int, int]]:
    """Cells of `cube` for which some feasible sentence has exactly those features."""
    from engine.derivation import ResourceLimits
    from generators.expr_generator import build_generator

    generator = generator if generator is not None else build_generator()
    limits = limits if limits is not None else ResourceLimits()
    reachable = generator.reachable_features(cube.length_range[1], limits)
    return {
        (length, digits)
        for (length, digits) in reachable
        if cube.length_range[0] <= length <= cube.length_range[1]
        and cube.digits_range[0] <= digits <= cube.digits_range[1]
    }


def max_achievable_cells(cube: PreferenceHypercube, generator=None, limits: Optional[object] = None) -> int:
    return len(achievable_cells(cube, generator, limits))
