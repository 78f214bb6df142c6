"""
Finite labeled posets and their subsets.
Posets are stored as reflexive-transitive relations over bit-sets, so every
subset of a poset is a plain integer mask over the elements p_1..p_d.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterable, List, Sequence, Tuple

import networkx as nx

from src.utils.logger import get_logger

logger = get_logger(__name__)

MAX_POSET_SIZE = 62

LatticeVector = Tuple[int, ...]


class PosetError(ValueError):
    """Raised for malformed posets and misuse of poset subsets."""


def popcount(mask: int) -> int:
    """Number of elements in a bit-set."""
    return bin(mask).count("1")


def bits(mask: int) -> List[int]:
    """0-based indices set in ``mask``, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class Poset:
    """
    A finite labeled partial order on p_1..p_d.

    ``down[i]`` is the bit-set of all j with p_j <= p_i (0-based indices);
    the relation is reflexive, antisymmetric and transitive.
    """

    d: int
    down: Tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.d <= MAX_POSET_SIZE:
            raise PosetError(f"poset size must be in 1..{MAX_POSET_SIZE}, got {self.d}")
        if len(self.down) != self.d:
            raise PosetError("relation has the wrong number of rows")
        full = self.full_mask
        for i, row in enumerate(self.down):
            if row & ~full:
                raise PosetError(f"relation row {i + 1} refers to elements outside 1..{self.d}")
            if not row >> i & 1:
                raise PosetError("relation is not reflexive")
            for j in bits(row):
                if j != i and self.down[j] >> i & 1:
                    raise PosetError(f"relation is not antisymmetric on p{i + 1}, p{j + 1}")
                if self.down[j] & ~row:
                    raise PosetError("relation is not transitive")
        object.__setattr__(self, "_up", self._compute_up())

    def _compute_up(self) -> Tuple[int, ...]:
        up = [0] * self.d
        for i, row in enumerate(self.down):
            for j in bits(row):
                up[j] |= 1 << i
        return tuple(up)

    @property
    def full_mask(self) -> int:
        return (1 << self.d) - 1

    @property
    def up(self) -> Tuple[int, ...]:
        """``up[i]`` is the bit-set of all j with p_i <= p_j."""
        return self._up

    def leq(self, i: int, j: int) -> bool:
        """p_i <= p_j for 0-based indices."""
        return bool(self.down[j] >> i & 1)

    def less(self, i: int, j: int) -> bool:
        return i != j and self.leq(i, j)

    def comparable(self, i: int, j: int) -> bool:
        return self.leq(i, j) or self.leq(j, i)

    def down_closure(self, mask: int) -> int:
        closure = 0
        for i in bits(mask):
            closure |= self.down[i]
        return closure

    def minimal_in(self, mask: int) -> int:
        """Minimal elements of the subset ``mask``."""
        return sum(1 << i for i in bits(mask) if self.down[i] & mask == 1 << i)

    def maximal_in(self, mask: int) -> int:
        """Maximal elements of the subset ``mask``."""
        return sum(1 << i for i in bits(mask) if self._up[i] & mask == 1 << i)

    def is_ideal(self, mask: int) -> bool:
        return self.down_closure(mask) == mask

    def is_antichain(self, mask: int) -> bool:
        return all((self.down[i] | self._up[i]) & mask == 1 << i for i in bits(mask))

    def covers(self) -> List[Tuple[int, int]]:
        """
        Cover relations as 1-based pairs (a, b) meaning p_a < p_b with nothing
        in between.
        """
        result = []
        for b in range(self.d):
            for a in bits(self.down[b]):
                if a != b and self._up[a] & self.down[b] == (1 << a) | (1 << b):
                    result.append((a + 1, b + 1))
        return sorted(result)

    def to_dict(self) -> Dict[str, Any]:
        """Poset file JSON object."""
        return {"d": self.d, "covers": [list(c) for c in self.covers()]}

    def describe(self) -> str:
        covers = ", ".join(f"p{a}<p{b}" for a, b in self.covers())
        return f"Poset(d={self.d}: {covers or 'antichain'})"


class SubsetKind(str, Enum):
    """What a PosetSubset is guaranteed to be."""

    IDEAL = "ideal"
    ANTICHAIN = "antichain"
    ARBITRARY = "arbitrary"


@dataclass(frozen=True)
class PosetSubset:
    """A subset of a poset, flagged as ideal, antichain or arbitrary."""

    poset: Poset
    mask: int
    kind: SubsetKind = SubsetKind.ARBITRARY

    def __post_init__(self):
        if self.mask < 0 or self.mask & ~self.poset.full_mask:
            raise PosetError(f"subset mask {self.mask:#b} is out of range for d={self.poset.d}")
        if self.kind is SubsetKind.IDEAL and not self.poset.is_ideal(self.mask):
            raise PosetError(f"{self} is not downward closed")
        if self.kind is SubsetKind.ANTICHAIN and not self.poset.is_antichain(self.mask):
            raise PosetError(f"{self} is not an antichain")

    def elements(self) -> Tuple[int, ...]:
        """1-based labels of the members."""
        return tuple(i + 1 for i in bits(self.mask))

    def __len__(self) -> int:
        return popcount(self.mask)

    def __contains__(self, label: int) -> bool:
        return bool(self.mask >> (label - 1) & 1)

    def __str__(self) -> str:
        return "{" + ",".join(f"p{i}" for i in self.elements()) + "}"


def subset_from_labels(poset: Poset, labels: Iterable[int],
                       kind: SubsetKind = SubsetKind.ARBITRARY) -> PosetSubset:
    """Build a subset from 1-based labels."""
    mask = 0
    for label in labels:
        if not 1 <= label <= poset.d:
            raise PosetError(f"element index {label} out of range 1..{poset.d}")
        mask |= 1 << (label - 1)
    return PosetSubset(poset, mask, kind)


def parse_poset(d: int, covers: Sequence[Sequence[int]]) -> Poset:
    """
    Build a poset from its size and cover pairs.

    Args:
        d: Number of elements
        covers: 1-based pairs (a, b) meaning p_a < p_b

    Returns:
        Poset whose relation is the reflexive-transitive closure of the covers

    Raises:
        PosetError: On a cycle, an index out of range or a duplicate cover
    """
    if not isinstance(d, int) or not 1 <= d <= MAX_POSET_SIZE:
        raise PosetError(f"poset size must be an integer in 1..{MAX_POSET_SIZE}, got {d!r}")

    graph = nx.DiGraph()
    graph.add_nodes_from(range(d))
    seen = set()
    for pair in covers:
        if len(pair) != 2:
            raise PosetError(f"cover {pair!r} is not a pair")
        a, b = int(pair[0]), int(pair[1])
        for label in (a, b):
            if not 1 <= label <= d:
                raise PosetError(f"element index {label} out of range 1..{d}")
        if (a, b) in seen:
            raise PosetError(f"duplicate cover ({a}, {b})")
        if a == b:
            raise PosetError(f"cycle detected: p{a} < p{a}")
        seen.add((a, b))
        graph.add_edge(a - 1, b - 1)

    if not nx.is_directed_acyclic_graph(graph):
        cycle = nx.find_cycle(graph)
        path = " < ".join(f"p{u + 1}" for u, _ in cycle)
        raise PosetError(f"cycle detected: {path}")

    closure = nx.transitive_closure_dag(graph)
    down = []
    for b in range(d):
        row = 1 << b
        for a in closure.predecessors(b):
            row |= 1 << a
        down.append(row)
    poset = Poset(d, tuple(down))
    logger.debug(f"Parsed {poset.describe()}")
    return poset


def rho(subset: PosetSubset) -> LatticeVector:
    """0/1 incidence vector of a subset; rho of the empty set is the origin."""
    return tuple((subset.mask >> i) & 1 for i in range(subset.poset.d))
