"""
Exact lattice polytopes.
A LatticePolytope carries both its vertex list and its primitive facet
inequalities. Hulls are found with qhull and then recomputed and verified in
exact integer arithmetic, so floating point never decides anything.
"""

import logging
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Any, Dict, Iterable, List, Sequence, Tuple

import numpy as np
import sympy
from scipy.spatial import ConvexHull

from src.poset.core import LatticeVector
from src.utils.config import get_geometry_config
from src.utils.logger import PerformanceLogger, get_logger

logger = get_logger(__name__)


class PolytopeError(ValueError):
    """Raised when a polytope operation's precondition does not hold."""


class DegenerateHullError(PolytopeError):
    """Raised when a point set does not affinely span its ambient space."""


class HullError(PolytopeError):
    """Raised when a candidate facet fails exact verification."""


class NotFanoError(PolytopeError):
    """Raised by tests that are only defined for Fano polytopes."""


@dataclass(frozen=True)
class Facet:
    """
    The inequality <normal, x> <= offset with a primitive integer normal.

    ``vertices`` holds indices into the owning polytope's vertex list.
    """

    normal: LatticeVector
    offset: int
    vertices: Tuple[int, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {"a": [int(a) for a in self.normal], "b": int(self.offset)}


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def affine_rank(points: Sequence[LatticeVector]) -> int:
    """Dimension of the affine span of ``points`` (-1 for no points)."""
    if not points:
        return -1
    base = points[0]
    rows = [[p - q for p, q in zip(point, base)] for point in points[1:]]
    if not rows:
        return 0
    return sympy.Matrix(rows).rank()


def _primitive(normal: Sequence[int]) -> LatticeVector:
    g = reduce(gcd, (abs(int(a)) for a in normal), 0)
    return tuple(int(a) // g for a in normal)


def _hyperplane_through(points: Sequence[LatticeVector]) -> LatticeVector:
    """Primitive normal of the hyperplane through d affinely independent points."""
    rows = [list(p) + [-1] for p in points]
    kernel = sympy.Matrix(rows).nullspace()
    if len(kernel) != 1:
        raise HullError(f"facet candidate through {list(points)} is not a hyperplane")
    vector = kernel[0]
    scale = reduce(sympy.ilcm, (entry.q for entry in vector), 1)
    integral = [int(entry * scale) for entry in vector]
    return _primitive(integral[:-1])


@dataclass(frozen=True)
class LatticePolytope:
    """
    A full-dimensional integral polytope in R^d.

    Vertices are sorted lexicographically and facets by (normal, offset), so
    two hulls of the same point set compare equal.
    """

    d: int
    vertices: Tuple[LatticeVector, ...]
    facets: Tuple[Facet, ...]

    @property
    def dim(self) -> int:
        return self.d

    def normals(self) -> np.ndarray:
        return np.array([f.normal for f in self.facets], dtype=np.int64).reshape(-1, self.d)

    def offsets(self) -> np.ndarray:
        return np.array([f.offset for f in self.facets], dtype=np.int64)

    def facet_vertices(self, facet: Facet) -> List[LatticeVector]:
        return [self.vertices[i] for i in facet.vertices]

    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def contains(self, point: Sequence[int]) -> bool:
        return all(dot(f.normal, point) <= f.offset for f in self.facets)

    def scaled(self, k: int) -> "LatticePolytope":
        """The dilation kP for a positive integer k."""
        if k < 1:
            raise PolytopeError(f"dilation factor must be positive, got {k}")
        return hull([tuple(k * x for x in v) for v in self.vertices])

    def transformed(self, unimodular) -> "LatticePolytope":
        """Image of the polytope under a UnimodularMap (row-vector convention)."""
        return hull([unimodular.apply(v) for v in self.vertices])

    def to_dict(self) -> Dict[str, Any]:
        """Polytope export JSON object."""
        return {
            "d": self.d,
            "vertices": [list(v) for v in self.vertices],
            "facets": [f.to_dict() for f in self.facets],
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "LatticePolytope":
        """
        Rebuild a polytope from its export JSON object.

        The facets are recomputed from the vertices and must agree with any
        facets listed in the payload.

        Raises:
            PolytopeError: If the payload is malformed or inconsistent
        """
        try:
            d = int(payload["d"])
            points = [tuple(int(x) for x in v) for v in payload["vertices"]]
        except (KeyError, TypeError, ValueError) as e:
            raise PolytopeError(f"malformed polytope payload: {e}") from e
        if any(len(p) != d for p in points):
            raise PolytopeError(f"vertex of the wrong length for d={d}")
        polytope = hull(points)
        if "facets" in payload:
            listed = sorted((tuple(f["a"]), int(f["b"])) for f in payload["facets"])
            computed = sorted((f.normal, f.offset) for f in polytope.facets)
            if listed != computed:
                raise PolytopeError("listed facets do not match the hull of the listed vertices")
        return polytope

    def __str__(self) -> str:
        return f"LatticePolytope(d={self.d}, vertices={len(self.vertices)}, facets={len(self.facets)})"


def _validate_points(points: Iterable[Sequence[int]]) -> Tuple[int, List[LatticeVector]]:
    unique = sorted({tuple(int(x) for x in p) for p in points})
    if not unique:
        raise DegenerateHullError("cannot take the hull of an empty point set")
    d = len(unique[0])
    if d == 0 or any(len(p) != d for p in unique):
        raise PolytopeError("points must share one positive dimension")
    return d, unique


def _interval_hull(points: List[LatticeVector]) -> LatticePolytope:
    low, high = points[0], points[-1]
    vertices = (low, high)
    facets = (Facet((-1,), -low[0], (0,)), Facet((1,), high[0], (1,)))
    return LatticePolytope(1, vertices, tuple(sorted(facets, key=lambda f: (f.normal, f.offset))))


def hull(points: Iterable[Sequence[int]]) -> LatticePolytope:
    """
    Convex hull of a finite set of lattice points.

    Args:
        points: Integer points of one common dimension d

    Returns:
        LatticePolytope with its vertices and every facet inequality

    Raises:
        DegenerateHullError: If the points do not affinely span R^d
        HullError: If a candidate facet fails exact verification
    """
    d, pts = _validate_points(points)
    if affine_rank(pts) < d:
        raise DegenerateHullError(f"{len(pts)} points do not span R^{d}")
    if d == 1:
        return _interval_hull(pts)

    with PerformanceLogger(logger, f"hull of {len(pts)} points in R^{d}", level=logging.DEBUG):
        array = np.array(pts, dtype=np.int64)
        qhull = ConvexHull(array.astype(float))
        total = array.sum(axis=0)

        found: Dict[Tuple[LatticeVector, int], None] = {}
        for simplex in qhull.simplices:
            corner = array[simplex]
            # Simplices of an already known facet need no exact solve
            if any(bool(np.all(corner @ np.array(a) == b)) for a, b in found):
                continue
            normal = _hyperplane_through([tuple(int(x) for x in row) for row in corner])
            offset = int(dot(normal, corner[0]))
            if dot(normal, total) > len(pts) * offset:
                normal = tuple(-a for a in normal)
                offset = -offset
            values = array @ np.array(normal, dtype=np.int64)
            if np.any(values > offset):
                raise HullError(f"candidate facet {normal} <= {offset} cuts off input points")
            found[(normal, offset)] = None

        inequalities = sorted(found)
        normals = np.array([a for a, _ in inequalities], dtype=np.int64)
        offsets = np.array([b for _, b in inequalities], dtype=np.int64)
        tight = (array @ normals.T) == offsets

        vertices = []
        for row, point in zip(tight, pts):
            active = normals[row]
            if len(active) >= d and sympy.Matrix(active.tolist()).rank() == d:
                vertices.append(point)

        index = {v: i for i, v in enumerate(vertices)}
        facets = []
        for k, (normal, offset) in enumerate(inequalities):
            on_facet = tuple(index[p] for p, row in zip(pts, tight) if row[k] and p in index)
            if affine_rank([vertices[i] for i in on_facet]) != d - 1:
                raise HullError(f"facet {normal} <= {offset} is not tight at d affinely independent vertices")
            facets.append(Facet(normal, offset, on_facet))

    polytope = LatticePolytope(d, tuple(vertices), tuple(facets))
    logger.debug(f"Built {polytope}")
    return polytope


def bounding_box(polytope: LatticePolytope, n: int = 1) -> Tuple[np.ndarray, np.ndarray]:
    """Integer bounding box of the dilation nP."""
    array = np.array(polytope.vertices, dtype=np.int64)
    return n * array.min(axis=0), n * array.max(axis=0)


def check_dimension(d: int) -> None:
    """Refuse geometric work beyond the configured dimension limit."""
    limit = get_geometry_config().max_dimension
    if d > limit:
        raise PolytopeError(f"dimension {d} exceeds the configured limit {limit}")
