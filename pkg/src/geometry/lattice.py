"""
Lattice-point scans of dilated polytopes.
Every integer point of the bounding box of nP is tested against all facet
inequalities, in fixed-size numpy batches.
"""

from typing import Iterator, Optional

import numpy as np

from src.geometry.polytope import LatticePolytope, PolytopeError, bounding_box
from src.utils.config import get_geometry_config
from src.utils.logger import get_logger

logger = get_logger(__name__)


def _box_batches(low: np.ndarray, high: np.ndarray, chunk_size: int) -> Iterator[np.ndarray]:
    shape = tuple(int(s) for s in high - low + 1)
    total = int(np.prod(shape, dtype=object))
    for start in range(0, total, chunk_size):
        flat = np.arange(start, min(start + chunk_size, total), dtype=np.int64)
        coords = np.stack(np.unravel_index(flat, shape), axis=1).astype(np.int64)
        yield coords + low


def _scan(polytope: LatticePolytope, n: int, strict: bool,
          chunk_size: Optional[int]) -> Iterator[np.ndarray]:
    if n < 0:
        raise PolytopeError(f"dilation must be nonnegative, got {n}")
    chunk_size = chunk_size or get_geometry_config().count_chunk_size
    normals = polytope.normals()
    bounds = n * polytope.offsets()
    low, high = bounding_box(polytope, n)
    for batch in _box_batches(low, high, chunk_size):
        values = batch @ normals.T
        inside = np.all(values < bounds, axis=1) if strict else np.all(values <= bounds, axis=1)
        yield batch[inside]


def lattice_points(polytope: LatticePolytope, n: int = 1,
                   chunk_size: Optional[int] = None) -> np.ndarray:
    """All integer points of nP as rows of an int64 array."""
    found = list(_scan(polytope, n, strict=False, chunk_size=chunk_size))
    return np.concatenate(found) if found else np.empty((0, polytope.d), dtype=np.int64)


def lattice_point_count(polytope: LatticePolytope, n: int,
                        chunk_size: Optional[int] = None) -> int:
    """
    |nP cap Z^d| by a bounding-box scan.

    Args:
        polytope: The polytope P
        n: Nonnegative dilation factor
        chunk_size: Points tested per numpy batch (config default)

    Returns:
        Exact lattice-point count of the n-th dilation
    """
    count = sum(len(rows) for rows in _scan(polytope, n, strict=False, chunk_size=chunk_size))
    logger.debug(f"i(P, {n}) = {count} for {polytope}")
    return count


def interior_point_count(polytope: LatticePolytope, n: int = 1,
                         chunk_size: Optional[int] = None) -> int:
    """Lattice points strictly inside nP (zero when n = 0)."""
    if n == 0:
        return 0
    return sum(len(rows) for rows in _scan(polytope, n, strict=True, chunk_size=chunk_size))
