"""
Fano-type predicates and symmetry tests for lattice polytopes.
"""

from typing import List, Tuple

import sympy

from src.geometry.lattice import interior_point_count
from src.geometry.polytope import Facet, LatticePolytope, NotFanoError
from src.utils.logger import get_logger

logger = get_logger(__name__)


def contains_origin_interior(polytope: LatticePolytope) -> bool:
    """True iff <a, 0> < b for every facet, i.e. every offset is positive."""
    return all(f.offset > 0 for f in polytope.facets)


def is_fano(polytope: LatticePolytope) -> bool:
    """The origin is the one and only interior lattice point."""
    if not contains_origin_interior(polytope):
        return False
    return interior_point_count(polytope, 1) == 1


def _require_fano(polytope: LatticePolytope, test: str) -> None:
    if not is_fano(polytope):
        raise NotFanoError(f"{test} is only defined for Fano polytopes, got {polytope}")


def dual_vertices(polytope: LatticePolytope) -> List[Tuple[sympy.Rational, ...]]:
    """
    Vertices a/b of the dual polytope {y : <x, y> <= 1 for x in P}.

    Raises:
        NotFanoError: If P is not Fano
    """
    _require_fano(polytope, "the dual polytope")
    return [tuple(sympy.Rational(a, f.offset) for a in f.normal) for f in polytope.facets]


def is_gorenstein(polytope: LatticePolytope) -> bool:
    """
    Reflexivity: the dual polytope is integral.

    Normals are primitive, so this is the same as every facet offset being 1.

    Raises:
        NotFanoError: If P is not Fano
    """
    integral = all(x.q == 1 for v in dual_vertices(polytope) for x in v)
    if integral != all(f.offset == 1 for f in polytope.facets):
        logger.warning(f"dual integrality and unit offsets disagree for {polytope}")
    return integral


def is_simplicial(polytope: LatticePolytope) -> bool:
    """Every facet carries exactly d vertices."""
    return all(len(f.vertices) == polytope.d for f in polytope.facets)


is_q_factorial = is_simplicial


def facet_determinant(polytope: LatticePolytope, facet: Facet) -> int:
    """Determinant of the d x d matrix of a simplicial facet's vertices."""
    return int(sympy.Matrix(polytope.facet_vertices(facet)).det())


def is_smooth(polytope: LatticePolytope) -> bool:
    """
    Simplicial, and each facet's vertices form a basis of Z^d.

    Raises:
        NotFanoError: If P is not Fano
    """
    _require_fano(polytope, "smoothness")
    if not is_simplicial(polytope):
        return False
    return all(abs(facet_determinant(polytope, f)) == 1 for f in polytope.facets)


def is_centrally_symmetric(polytope: LatticePolytope) -> bool:
    vertices = polytope.vertex_set()
    return all(tuple(-x for x in v) in vertices for v in vertices)


def is_pseudo_symmetric(polytope: LatticePolytope) -> bool:
    """Some facet F has -F as a facet too."""
    by_inequality = {(f.normal, f.offset): f for f in polytope.facets}
    for facet in polytope.facets:
        opposite = by_inequality.get((tuple(-a for a in facet.normal), facet.offset))
        if opposite is None:
            continue
        negated = {tuple(-x for x in v) for v in polytope.facet_vertices(facet)}
        if negated == set(polytope.facet_vertices(opposite)):
            return True
    return False


def symmetric_vertex_count(polytope: LatticePolytope) -> int:
    """Number of vertices v whose negation -v is a vertex as well."""
    vertices = polytope.vertex_set()
    return sum(1 for v in vertices if tuple(-x for x in v) in vertices)
