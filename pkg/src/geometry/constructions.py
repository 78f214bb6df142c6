"""
Named polytopes and the constructions that combine them: the segment L,
cross-polytopes, cubes, del Pezzo and pseudo del Pezzo polytopes, free sums
and the two smoothness-preserving one-dimension extensions.
"""

import itertools
from typing import List

from src.geometry.polytope import LatticePolytope, PolytopeError, hull
from src.geometry.properties import contains_origin_interior
from src.poset.core import LatticeVector
from src.utils.logger import get_logger

logger = get_logger(__name__)

EXTENSION_MODES = ("pyramid", "symmetric")


def unit_vector(d: int, i: int, sign: int = 1) -> LatticeVector:
    return tuple(sign if k == i else 0 for k in range(d))


def _signed_units(d: int) -> List[LatticeVector]:
    return [unit_vector(d, i, s) for i in range(d) for s in (1, -1)]


def interval() -> LatticePolytope:
    """L = [-1, 1]."""
    return hull([(-1,), (1,)])


def cross_polytope(d: int) -> LatticePolytope:
    return hull(_signed_units(d))


def cube(d: int, low: int = -1, high: int = 1) -> LatticePolytope:
    """The cube [low, high]^d."""
    if high <= low:
        raise PolytopeError(f"empty cube range [{low}, {high}]")
    return hull(itertools.product((low, high), repeat=d))


def del_pezzo(k: int) -> LatticePolytope:
    """V_2k: conv(+-e_i, +-(e_1 + ... + e_2k)) in dimension 2k."""
    d = 2 * k
    if k < 1:
        raise PolytopeError(f"del Pezzo index must be positive, got {k}")
    ones = tuple([1] * d)
    return hull(_signed_units(d) + [ones, tuple(-x for x in ones)])


def pseudo_del_pezzo(k: int) -> LatticePolytope:
    """V~_2k: conv(+-e_i, e_1 + ... + e_2k) in dimension 2k."""
    d = 2 * k
    if k < 1:
        raise PolytopeError(f"pseudo del Pezzo index must be positive, got {k}")
    return hull(_signed_units(d) + [tuple([1] * d)])


def direct_sum(first: LatticePolytope, second: LatticePolytope) -> LatticePolytope:
    """
    Free sum: hull of (alpha, 0) and (0, beta) in R^(d1 + d2).

    Raises:
        PolytopeError: If either summand lacks the origin in its interior
    """
    for part in (first, second):
        if not contains_origin_interior(part):
            raise PolytopeError(f"free sum needs the origin inside each summand, {part} fails")
    left = [v + (0,) * second.d for v in first.vertices]
    right = [(0,) * first.d + v for v in second.vertices]
    return hull(left + right)


def smooth_extension(polytope: LatticePolytope, mode: str = "pyramid") -> LatticePolytope:
    """
    Embed P in R^(d+1) and add two vertices.

    ``pyramid`` adds e_1 + ... + e_(d+1) and -e_(d+1); ``symmetric`` adds
    +-(e_1 + ... + e_(d+1)). Both keep a smooth Fano polytope smooth Fano.
    """
    if mode not in EXTENSION_MODES:
        raise PolytopeError(f"unknown extension mode {mode!r}, expected one of {EXTENSION_MODES}")
    d = polytope.d + 1
    ones = tuple([1] * d)
    extra = [ones, unit_vector(d, d - 1, -1)] if mode == "pyramid" else [ones, tuple(-x for x in ones)]
    return hull([v + (0,) for v in polytope.vertices] + extra)
