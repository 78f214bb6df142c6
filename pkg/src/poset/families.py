"""
Combinatorial families of a poset: ideals, antichains, linear extensions,
plus labeled poset enumeration and the named posets used throughout.
"""

import itertools
from typing import Dict, Iterator, List, Optional, Tuple

import networkx as nx

from src.poset.core import (
    Poset,
    PosetError,
    PosetSubset,
    SubsetKind,
    bits,
    parse_poset,
    popcount,
)
from src.utils.logger import get_logger

logger = get_logger(__name__)

MAX_ENUMERATION_SIZE = 5


def _family_order(mask: int) -> Tuple[int, int]:
    return popcount(mask), mask


def ideal_masks(poset: Poset) -> List[int]:
    """
    All poset ideals as bit-sets, ordered by (cardinality, mask).

    Walks the ideal lattice upward by adding a minimal element of the
    complement; a child is kept only when the added element is the
    highest-indexed maximal element of the child, so every ideal has exactly
    one parent and no deduplication is needed.
    """
    found = [0]
    stack = [0]
    while stack:
        ideal = stack.pop()
        complement = poset.full_mask & ~ideal
        for i in bits(poset.minimal_in(complement)):
            child = ideal | (1 << i)
            if poset.maximal_in(child).bit_length() - 1 == i:
                found.append(child)
                stack.append(child)
    return sorted(found, key=_family_order)


def ideals(poset: Poset) -> List[PosetSubset]:
    """J(P): every downward-closed subset, the empty set and P included."""
    return [PosetSubset(poset, mask, SubsetKind.IDEAL) for mask in ideal_masks(poset)]


def antichain_masks(poset: Poset, size_filter: Optional[int] = None) -> List[int]:
    """All antichains as bit-sets (optionally only those of one size)."""
    found = []

    def extend(mask: int, start: int) -> None:
        found.append(mask)
        if size_filter is not None and popcount(mask) >= size_filter:
            return
        for j in range(start, poset.d):
            if all(not poset.comparable(i, j) for i in bits(mask)):
                extend(mask | (1 << j), j + 1)

    extend(0, 0)
    if size_filter is not None:
        found = [m for m in found if popcount(m) == size_filter]
    return sorted(found, key=_family_order)


def antichains(poset: Poset, size_filter: Optional[int] = None) -> List[PosetSubset]:
    """
    A(P), or A_k(P) when ``size_filter`` is k.

    Args:
        poset: The poset
        size_filter: Keep only antichains of this cardinality

    Returns:
        Antichains ordered by (cardinality, mask)
    """
    return [
        PosetSubset(poset, mask, SubsetKind.ANTICHAIN)
        for mask in antichain_masks(poset, size_filter)
    ]


def max_elements(ideal: PosetSubset) -> PosetSubset:
    """max(I) of an ideal, as an antichain."""
    if ideal.kind is not SubsetKind.IDEAL:
        raise PosetError(f"max_elements expects an ideal, got a {ideal.kind.value} subset")
    return PosetSubset(ideal.poset, ideal.poset.maximal_in(ideal.mask), SubsetKind.ANTICHAIN)


def ideal_from_antichain(poset: Poset, antichain: PosetSubset) -> PosetSubset:
    """The smallest ideal containing an antichain (its max set is the antichain)."""
    if antichain.kind is not SubsetKind.ANTICHAIN:
        raise PosetError(f"ideal_from_antichain expects an antichain, got a {antichain.kind.value} subset")
    if antichain.poset != poset:
        raise PosetError("antichain belongs to a different poset")
    return PosetSubset(poset, poset.down_closure(antichain.mask), SubsetKind.IDEAL)


def star_mask(poset: Poset, ideal: int, other: int) -> int:
    """I*I' on bit-sets: generated by max(I n I') n (max(I) u max(I'))."""
    generators = poset.maximal_in(ideal & other) & (poset.maximal_in(ideal) | poset.maximal_in(other))
    return poset.down_closure(generators)


def star(ideal: PosetSubset, other: PosetSubset) -> PosetSubset:
    """
    The ideal I*I' generated by max(I n I') n (max(I) u max(I')).

    Raises:
        PosetError: If either argument is not an ideal or the parents differ
    """
    if ideal.poset != other.poset:
        raise PosetError("star of ideals from different posets")
    if ideal.kind is not SubsetKind.IDEAL or other.kind is not SubsetKind.IDEAL:
        raise PosetError("star is defined for ideals only")
    return PosetSubset(ideal.poset, star_mask(ideal.poset, ideal.mask, other.mask), SubsetKind.IDEAL)


def count_linear_extensions(poset: Poset) -> int:
    """
    e(P), counted as maximal chains from the empty ideal to P in J(P).

    Each ideal I is reached from I minus one of its maximal elements, so the
    count propagates over ideals in order of cardinality.
    """
    paths: Dict[int, int] = {0: 1}
    for ideal in ideal_masks(poset)[1:]:
        paths[ideal] = sum(paths[ideal & ~(1 << i)] for i in bits(poset.maximal_in(ideal)))
    return paths[poset.full_mask]


def linear_extensions(poset: Poset) -> List[Tuple[int, ...]]:
    """All linear extensions as 1-based label sequences, lexicographically."""
    result = []

    def extend(prefix: List[int], placed: int) -> None:
        if placed == poset.full_mask:
            result.append(tuple(i + 1 for i in prefix))
            return
        for i in bits(poset.minimal_in(poset.full_mask & ~placed)):
            prefix.append(i)
            extend(prefix, placed | (1 << i))
            prefix.pop()

    extend([], 0)
    return result


def count_linear_extensions_bruteforce(poset: Poset) -> int:
    """e(P) by filtering all d! permutations."""
    count = 0
    for perm in itertools.permutations(range(poset.d)):
        position = {p: k for k, p in enumerate(perm)}
        if all(
            position[a - 1] < position[b - 1] for a, b in poset.covers()
        ):
            count += 1
    return count


def has_common_linear_extension(first: Poset, second: Poset) -> bool:
    """
    True iff one permutation of [d] extends both orders, i.e. the union of
    the two relations is acyclic.
    """
    if first.d != second.d:
        raise PosetError(f"posets have different sizes {first.d} and {second.d}")
    graph = nx.DiGraph()
    graph.add_nodes_from(range(first.d))
    graph.add_edges_from((a - 1, b - 1) for a, b in first.covers())
    graph.add_edges_from((a - 1, b - 1) for a, b in second.covers())
    return nx.is_directed_acyclic_graph(graph)


def enumerate_posets(d: int) -> Iterator[Poset]:
    """
    Every labeled poset on p_1..p_d exactly once.

    Each unordered pair is unrelated, p_i < p_j or p_j < p_i; the choices that
    give a transitive relation are kept.

    Raises:
        PosetError: If d is outside 1..5
    """
    if not 1 <= d <= MAX_ENUMERATION_SIZE:
        raise PosetError(f"poset enumeration is limited to 1 <= d <= {MAX_ENUMERATION_SIZE}, got {d}")
    pairs = list(itertools.combinations(range(d), 2))
    for states in itertools.product((0, 1, 2), repeat=len(pairs)):
        down = [1 << i for i in range(d)]
        for (i, j), state in zip(pairs, states):
            if state == 1:
                down[j] |= 1 << i
            elif state == 2:
                down[i] |= 1 << j
        if all(down[j] & ~down[i] == 0 for i in range(d) for j in bits(down[i])):
            yield Poset(d, tuple(down))


def chain_poset(d: int) -> Poset:
    """p_1 < p_2 < ... < p_d."""
    return parse_poset(d, [(i, i + 1) for i in range(1, d)])


def antichain_poset(d: int) -> Poset:
    return parse_poset(d, [])


def bottom_pair_poset(d: int) -> Poset:
    """p_1 and p_2 incomparable, both below the chain p_3 < ... < p_d."""
    if d < 2:
        raise PosetError("bottom_pair_poset needs d >= 2")
    covers = [(1, 3), (2, 3)] if d >= 3 else []
    covers += [(i, i + 1) for i in range(3, d)]
    return parse_poset(d, covers)
