"""
Unimodular equivalence of Fano lattice polytopes.
For Fano polytopes the translation part of an affine lattice map is zero, so
an equivalence is an integer matrix U with |det U| = 1 sending the vertex
set of one polytope onto the other's (row vectors, v -> vU).
"""

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from src.geometry.polytope import LatticePolytope, NotFanoError, PolytopeError
from src.geometry.properties import is_fano
from src.poset.core import LatticeVector
from src.utils.logger import get_logger

logger = get_logger(__name__)

Signature = Tuple[int, bool]


@dataclass(frozen=True)
class UnimodularMap:
    """An integer d x d matrix with determinant +-1."""

    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        d = len(self.matrix)
        if d == 0 or any(len(row) != d for row in self.matrix):
            raise PolytopeError("a unimodular map needs a square non-empty matrix")
        if abs(self.determinant()) != 1:
            raise PolytopeError(f"matrix {self.matrix} has determinant {self.determinant()}, not +-1")

    @property
    def d(self) -> int:
        return len(self.matrix)

    @classmethod
    def identity(cls, d: int) -> "UnimodularMap":
        return cls(tuple(tuple(int(i == j) for j in range(d)) for i in range(d)))

    @classmethod
    def from_sympy(cls, matrix: sympy.Matrix) -> "UnimodularMap":
        return cls(tuple(tuple(int(x) for x in matrix.row(i)) for i in range(matrix.rows)))

    def as_sympy(self) -> sympy.Matrix:
        return sympy.Matrix(self.matrix)

    def determinant(self) -> int:
        return int(self.as_sympy().det())

    def apply(self, vector: Sequence[int]) -> LatticeVector:
        """f_U(v) = vU."""
        return tuple(
            sum(vector[i] * self.matrix[i][j] for i in range(self.d)) for j in range(self.d)
        )

    def inverse(self) -> "UnimodularMap":
        return UnimodularMap.from_sympy(self.as_sympy().inv())

    def to_list(self) -> List[List[int]]:
        return [list(row) for row in self.matrix]


def vertex_signatures(polytope: LatticePolytope) -> Dict[LatticeVector, Signature]:
    """
    Per vertex: the number of incident facets and whether -v is a vertex.
    Both are preserved by every lattice map fixing the origin.
    """
    incidence = Counter(i for f in polytope.facets for i in f.vertices)
    vertices = polytope.vertex_set()
    return {
        v: (incidence[i], tuple(-x for x in v) in vertices)
        for i, v in enumerate(polytope.vertices)
    }


def _independent_rows(points: Sequence[LatticeVector], d: int) -> List[LatticeVector]:
    chosen: List[LatticeVector] = []
    for point in points:
        if sympy.Matrix(chosen + [point]).rank() == len(chosen) + 1:
            chosen.append(point)
        if len(chosen) == d:
            return chosen
    raise PolytopeError("facet vertices do not span R^d")


def _coarse_invariants(polytope: LatticePolytope) -> Tuple:
    signatures = vertex_signatures(polytope)
    return (
        polytope.d,
        len(polytope.vertices),
        sorted(len(f.vertices) for f in polytope.facets),
        sorted(signatures.values()),
    )


def unimodular_equivalent(source: LatticePolytope, target: LatticePolytope) -> Optional[UnimodularMap]:
    """
    Find U with f_U(V(source)) = V(target), if there is one.

    A lattice map sends facets to facets, so a fixed basis of vertices from
    the smallest facet of ``source`` is tried against every ordered tuple
    drawn from each compatible facet of ``target``, pruned by vertex
    signatures. Candidates are visited in a fixed order, which makes the
    returned map deterministic.

    Raises:
        NotFanoError: If either polytope is not Fano
    """
    for polytope in (source, target):
        if not is_fano(polytope):
            raise NotFanoError(f"equivalence search expects Fano polytopes, got {polytope}")
    if _coarse_invariants(source) != _coarse_invariants(target):
        logger.debug("Coarse invariants differ; no equivalence")
        return None

    d = source.d
    src_signatures = vertex_signatures(source)
    dst_signatures = vertex_signatures(target)

    facet = min(source.facets, key=lambda f: (len(f.vertices), f.normal))
    basis = _independent_rows(source.facet_vertices(facet), d)
    basis_inverse = sympy.Matrix(basis).inv()
    wanted = [src_signatures[v] for v in basis]
    facet_profile = sorted(src_signatures[v] for v in source.facet_vertices(facet))

    source_array = np.array(source.vertices, dtype=np.int64)
    target_set = target.vertex_set()

    tried = 0
    for candidate in target.facets:
        points = target.facet_vertices(candidate)
        if len(points) != len(facet.vertices):
            continue
        if sorted(dst_signatures[v] for v in points) != facet_profile:
            continue
        for images in itertools.permutations(points, d):
            if any(dst_signatures[v] != s for v, s in zip(images, wanted)):
                continue
            tried += 1
            solution = basis_inverse * sympy.Matrix(images)
            if any(not x.is_integer for x in solution):
                continue
            if abs(solution.det()) != 1:
                continue
            matrix = np.array(solution.tolist(), dtype=np.int64)
            mapped = {tuple(int(x) for x in row) for row in source_array @ matrix}
            if mapped == target_set:
                found = UnimodularMap.from_sympy(solution)
                logger.debug(f"Equivalence found after {tried} candidate tuples: {found.to_list()}")
                return found

    logger.debug(f"No equivalence among {tried} candidate tuples")
    return None
