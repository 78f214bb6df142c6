"""
Ehrhart polynomials and normalized volumes.
The polynomial is interpolated from exact lattice-point counts; the volume is
read from its leading coefficient and cross-checked against a pulling
triangulation built from the facet incidences alone.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Any, Dict, FrozenSet, List, Tuple

import sympy

from src.geometry.lattice import lattice_point_count
from src.geometry.polytope import LatticePolytope, PolytopeError, affine_rank, check_dimension
from src.utils.logger import PerformanceLogger, get_logger

logger = get_logger(__name__)

_n = sympy.Symbol("n")


class EhrhartConsistencyError(PolytopeError):
    """Raised when interpolated counts do not behave like an Ehrhart polynomial."""


class VolumeMismatchError(PolytopeError):
    """Raised when the Ehrhart and triangulation volumes differ."""


@dataclass(frozen=True)
class EhrhartPolynomial:
    """i(P, n) = sum of c_k n^k, coefficients c_0..c_d as exact rationals."""

    coefficients: Tuple[sympy.Rational, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> sympy.Rational:
        return self.coefficients[-1]

    def __call__(self, n: int) -> int:
        value = sum(c * n ** k for k, c in enumerate(self.coefficients))
        return int(value)

    def normalized_volume(self) -> int:
        """c_d times d!."""
        return int(self.leading * factorial(self.degree))

    def as_expr(self) -> sympy.Expr:
        return sum(c * _n ** k for k, c in enumerate(self.coefficients))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "coefficients": [str(c) for c in self.coefficients],
            "polynomial": str(self),
        }

    def __str__(self) -> str:
        return str(self.as_expr())


def ehrhart_from_counts(counts: List[int]) -> EhrhartPolynomial:
    """Interpolate the polynomial through (n, counts[n]) for n = 0..len-1."""
    expr = sympy.interpolate(list(enumerate(counts)), _n)
    poly = sympy.Poly(sympy.expand(expr), _n)
    degree = len(counts) - 1
    coefficients = [sympy.Rational(poly.coeff_monomial(_n ** k)) for k in range(degree + 1)]
    return EhrhartPolynomial(tuple(coefficients))


def ehrhart(polytope: LatticePolytope) -> EhrhartPolynomial:
    """
    Ehrhart polynomial through the counts at n = 0..d.

    Returns:
        The interpolated polynomial, checked for degree d, c_0 = 1, c_d > 0
        and a correct prediction at n = d + 1

    Raises:
        EhrhartConsistencyError: If any of those checks fails
    """
    d = polytope.d
    check_dimension(d)
    with PerformanceLogger(logger, f"Ehrhart polynomial of {polytope}", level=logging.DEBUG):
        counts = [lattice_point_count(polytope, n) for n in range(d + 1)]
        polynomial = ehrhart_from_counts(counts)

        if polynomial.coefficients[0] != 1:
            raise EhrhartConsistencyError(f"constant term {polynomial.coefficients[0]} != 1 for {polytope}")
        if polynomial.leading <= 0:
            raise EhrhartConsistencyError(f"polynomial {polynomial} does not have degree {d}")
        predicted = polynomial(d + 1)
        actual = lattice_point_count(polytope, d + 1)
        if predicted != actual:
            raise EhrhartConsistencyError(
                f"polynomial {polynomial} predicts {predicted} points at n={d + 1}, counted {actual}"
            )
    return polynomial


def _faces_below(polytope: LatticePolytope, face: FrozenSet[int], dim: int) -> List[FrozenSet[int]]:
    """The (dim - 1)-faces of a face, as vertex index sets."""
    found = set()
    for facet in polytope.facets:
        sub = face & frozenset(facet.vertices)
        if sub == face or sub in found:
            continue
        if affine_rank([polytope.vertices[i] for i in sorted(sub)]) == dim - 1:
            found.add(sub)
    return sorted(found, key=sorted)


def pulling_triangulation(polytope: LatticePolytope) -> List[Tuple[int, ...]]:
    """
    Full-dimensional simplices of a pulling triangulation.

    Each face is coned from its smallest vertex index over the triangulated
    faces that avoid that vertex.
    """

    @lru_cache(maxsize=None)
    def triangulate(face: FrozenSet[int], dim: int) -> Tuple[Tuple[int, ...], ...]:
        if dim == 0:
            return (tuple(face),)
        apex = min(face)
        simplices = []
        for sub in _faces_below(polytope, face, dim):
            if apex in sub:
                continue
            simplices.extend((apex,) + s for s in triangulate(sub, dim - 1))
        return tuple(simplices)

    return list(triangulate(frozenset(range(len(polytope.vertices))), polytope.d))


def triangulation_volume(polytope: LatticePolytope) -> int:
    """Normalized volume as the sum of |det| over a pulling triangulation."""
    total = 0
    for simplex in pulling_triangulation(polytope):
        apex = polytope.vertices[simplex[0]]
        rows = [[x - y for x, y in zip(polytope.vertices[i], apex)] for i in simplex[1:]]
        total += abs(int(sympy.Matrix(rows).det()))
    return total


def normalized_volume(polytope: LatticePolytope) -> int:
    """
    d! times the Euclidean volume.

    Raises:
        VolumeMismatchError: If the Ehrhart and triangulation values differ
    """
    from_ehrhart = ehrhart(polytope).normalized_volume()
    from_triangulation = triangulation_volume(polytope)
    if from_ehrhart != from_triangulation:
        raise VolumeMismatchError(
            f"Ehrhart volume {from_ehrhart} != triangulation volume {from_triangulation} for {polytope}"
        )
    return from_ehrhart
