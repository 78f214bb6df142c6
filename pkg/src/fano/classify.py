"""
Poset-side criteria for smoothness of the paired polytopes, the split
decomposition of smooth Gamma(C(P), -C(Q)) into L, V_2 and V~_2 blocks, and
the unimodular equivalence verdicts among the three pairings.
"""

from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from typing import Any, Dict, List, Optional, Tuple

from src.gamma.construct import PairingKind, gamma
from src.geometry.constructions import del_pezzo, direct_sum, interval, pseudo_del_pezzo
from src.geometry.ehrhart import EhrhartPolynomial, ehrhart
from src.geometry.equivalence import UnimodularMap, unimodular_equivalent
from src.geometry.polytope import LatticePolytope, hull
from src.geometry.properties import (
    is_centrally_symmetric,
    is_fano,
    is_pseudo_symmetric,
    is_smooth,
    symmetric_vertex_count,
)
from src.poset.core import Poset, bits
from src.poset.families import (
    antichain_masks,
    bottom_pair_poset,
    chain_poset,
    has_common_linear_extension,
)
from src.utils.logger import get_logger

logger = get_logger(__name__)


class ClassificationError(ValueError):
    """Raised when a smoothness criterion's hypotheses are not met."""


def _check_pair(first: Poset, second: Poset) -> None:
    if first.d != second.d:
        raise ClassificationError(f"posets have different sizes {first.d} and {second.d}")
    if first.d < 2:
        raise ClassificationError("smoothness criteria need d >= 2")


def _pair_masks(poset: Poset) -> List[int]:
    return antichain_masks(poset, 2)


def ccs_smooth_condition(first: Poset, second: Poset) -> bool:
    """
    Gamma(C(P), -C(Q)) is smooth iff the 2-antichains of P are pairwise
    disjoint, those of Q are too, and no 2-antichain of P meets one of Q in
    exactly one index.
    """
    _check_pair(first, second)
    p_pairs, q_pairs = _pair_masks(first), _pair_masks(second)
    for pairs in (p_pairs, q_pairs):
        for i, a in enumerate(pairs):
            if any(a & b for b in pairs[i + 1:]):
                return False
    # a 3-antichain holds two overlapping 2-antichains
    if antichain_masks(first, 3) or antichain_masks(second, 3):
        raise ClassificationError("disjoint 2-antichains yet a 3-antichain exists")
    return all(bin(a & b).count("1") != 1 for a in p_pairs for b in q_pairs)


def shape_orders(poset: Poset) -> List[Tuple[int, ...]]:
    """
    Index orders i_1..i_d under which P is a chain p_i1 < ... < p_id, or a
    chain whose bottom two elements p_i1, p_i2 are incomparable.

    A chain has one such order; the bottom-pair shape has two, differing by
    the swap of i_1 and i_2. Any other poset has none.
    """
    order = sorted(range(poset.d), key=lambda i: (bin(poset.down[i]).count("1"), i))
    chain = all(poset.less(order[k], order[k + 1]) for k in range(poset.d - 1))
    if chain:
        return [tuple(i + 1 for i in order)]
    if poset.d < 2 or poset.comparable(order[0], order[1]):
        return []
    for k in range(poset.d):
        for l in range(k + 1, poset.d):
            if (k, l) != (0, 1) and not poset.less(order[k], order[l]):
                return []
    labels = [i + 1 for i in order]
    swapped = [labels[1], labels[0]] + labels[2:]
    return sorted([tuple(labels), tuple(swapped)])


def ocs_smooth_condition(first: Poset, second: Poset) -> bool:
    """
    Gamma(O(P), -C(Q)) is smooth iff P is a chain or a chain with an
    incomparable bottom pair, Q has no antichain of size three, and the only
    2-antichain Q may have sits on P's bottom two indices.
    """
    _check_pair(first, second)
    orders = shape_orders(first)
    if not orders:
        return False
    if antichain_masks(second, 3):
        return False
    i1, i2 = orders[0][0], orders[0][1]
    bottom = (1 << (i1 - 1)) | (1 << (i2 - 1))
    return all(mask == bottom for mask in _pair_masks(second))


def oos_smooth_condition(first: Poset, second: Poset) -> bool:
    """
    For P and Q with a common linear extension, Gamma(O(P), -O(Q)) is smooth
    iff both admit the chain or bottom-pair shape on one shared index order.

    Raises:
        ClassificationError: If P and Q have no common linear extension
    """
    _check_pair(first, second)
    if not has_common_linear_extension(first, second):
        raise ClassificationError("the order-order criterion needs a common linear extension")
    return bool(set(shape_orders(first)) & set(shape_orders(second)))


class BlockKind(str, Enum):
    DEL_PEZZO = "V2"
    PSEUDO_DEL_PEZZO = "V2~"
    INTERVAL = "L"


@dataclass(frozen=True)
class SplitBlock:
    """One free summand and the 1-based coordinates it occupies."""

    kind: BlockKind
    coordinates: Tuple[int, ...]
    sign: int = 1

    def points(self, d: int) -> List[Tuple[int, ...]]:
        def vector(coords, s):
            return tuple(s if i + 1 in coords else 0 for i in range(d))

        pts = [vector((c,), s) for c in self.coordinates for s in (1, -1)]
        if self.kind is BlockKind.DEL_PEZZO:
            pts += [vector(self.coordinates, 1), vector(self.coordinates, -1)]
        elif self.kind is BlockKind.PSEUDO_DEL_PEZZO:
            pts.append(vector(self.coordinates, self.sign))
        return pts


@dataclass(frozen=True)
class SplitProfile:
    """(l, m, n) counts of L, V~_2 and V_2 summands with their coordinates."""

    l: int
    m: int
    n: int
    blocks: Tuple[SplitBlock, ...] = field(default=())

    @property
    def d(self) -> int:
        return self.l + 2 * self.m + 2 * self.n

    def to_dict(self) -> Dict[str, Any]:
        return {
            "l": self.l,
            "m": self.m,
            "n": self.n,
            "blocks": [
                {"kind": b.kind.value, "coordinates": list(b.coordinates), "sign": b.sign}
                for b in self.blocks
            ],
        }


def split_decompose(first: Poset, second: Poset) -> SplitProfile:
    """
    Split profile of a smooth Gamma(C(P), -C(Q)).

    Blocks are assigned in a fixed order: shared 2-antichains become V_2
    blocks, one-sided ones V~_2 blocks (sign + for P, - for Q), and the
    remaining coordinates L blocks.

    Raises:
        ClassificationError: If the smoothness condition fails
    """
    if not ccs_smooth_condition(first, second):
        raise ClassificationError("split decomposition needs a smooth chain-chain pairing")
    p_pairs, q_pairs = set(_pair_masks(first)), set(_pair_masks(second))
    shared = sorted(p_pairs & q_pairs)
    one_sided = sorted([(m, 1) for m in p_pairs - q_pairs] + [(m, -1) for m in q_pairs - p_pairs])

    blocks: List[SplitBlock] = []
    used = 0
    for mask in shared:
        blocks.append(SplitBlock(BlockKind.DEL_PEZZO, tuple(i + 1 for i in bits(mask))))
        used |= mask
    for mask, sign in one_sided:
        blocks.append(SplitBlock(BlockKind.PSEUDO_DEL_PEZZO, tuple(i + 1 for i in bits(mask)), sign))
        used |= mask
    singles = [i for i in range(first.d) if not used >> i & 1]
    blocks += [SplitBlock(BlockKind.INTERVAL, (i + 1,)) for i in singles]

    profile = SplitProfile(l=len(singles), m=len(one_sided), n=len(shared), blocks=tuple(blocks))
    logger.debug(f"Split profile (l, m, n) = ({profile.l}, {profile.m}, {profile.n})")
    return profile


def predicted_volume(profile: SplitProfile) -> int:
    """2^l * 5^m * 6^n."""
    return 2 ** profile.l * 5 ** profile.m * 6 ** profile.n


def split_polytope(profile: SplitProfile, d: Optional[int] = None) -> LatticePolytope:
    """The explicit conv(+-e_i, ...) realised in the profile's own coordinates."""
    d = d or profile.d
    points = [p for block in profile.blocks for p in block.points(d)]
    return hull(points)


_BLOCK_POLYTOPES = {
    BlockKind.DEL_PEZZO: lambda: del_pezzo(1),
    BlockKind.PSEUDO_DEL_PEZZO: lambda: pseudo_del_pezzo(1),
    BlockKind.INTERVAL: interval,
}


def profile_direct_sum(profile: SplitProfile) -> LatticePolytope:
    """(+)_n V_2 (+) (+)_m V~_2 (+) (+)_l L, in block order."""
    summands = [_BLOCK_POLYTOPES[block.kind]() for block in profile.blocks]
    return reduce(direct_sum, summands)


def split_symmetry_holds(profile: SplitProfile, polytope: LatticePolytope) -> bool:
    """
    Without V~_2 blocks the smooth Gamma(C(P), -C(Q)) is centrally
    symmetric; with at least one it is pseudo-symmetric.
    """
    if profile.m == 0:
        return is_centrally_symmetric(polytope)
    return is_pseudo_symmetric(polytope)


@dataclass
class EquivalenceVerdicts:
    """
    Witness maps between the three pairings of (P, Q); None means no map
    exists (or the comparison does not apply because a side is not Fano).
    """

    oo_fano: bool
    oo_to_cc: Optional[UnimodularMap]
    oc_to_oo: Optional[UnimodularMap]
    oc_to_cc: Optional[UnimodularMap]
    oc_to_swapped: Optional[UnimodularMap]
    symmetric_counts: Dict[str, int]

    def to_dict(self) -> Dict[str, Any]:
        def show(u: Optional[UnimodularMap]):
            return u.to_list() if u is not None else None

        return {
            "oo_fano": self.oo_fano,
            "oo_to_cc": show(self.oo_to_cc),
            "oc_to_oo": show(self.oc_to_oo),
            "oc_to_cc": show(self.oc_to_cc),
            "oc_to_swapped": show(self.oc_to_swapped),
            "symmetric_vertex_counts": dict(self.symmetric_counts),
        }


def equivalence_verdicts(first: Poset, second: Poset) -> EquivalenceVerdicts:
    """Search for unimodular maps among Gamma_OO, Gamma_OC, Gamma_CC and
    Gamma_OC with the posets swapped."""
    _check_pair(first, second)
    oo = gamma(PairingKind.OO, first, second)
    oc = gamma(PairingKind.OC, first, second)
    cc = gamma(PairingKind.CC, first, second)
    swapped = gamma(PairingKind.OC, second, first)
    oo_fano = is_fano(oo)

    return EquivalenceVerdicts(
        oo_fano=oo_fano,
        oo_to_cc=unimodular_equivalent(oo, cc) if oo_fano else None,
        oc_to_oo=unimodular_equivalent(oc, oo) if oo_fano else None,
        oc_to_cc=unimodular_equivalent(oc, cc),
        oc_to_swapped=unimodular_equivalent(oc, swapped),
        symmetric_counts={
            "OO": symmetric_vertex_count(oo),
            "OC": symmetric_vertex_count(oc),
            "CC": symmetric_vertex_count(cc),
            "OC_swapped": symmetric_vertex_count(swapped),
        },
    )


@dataclass
class CorollaryWitness:
    """Two smooth Fano polytopes with one Ehrhart polynomial and no
    unimodular equivalence between them."""

    first: LatticePolytope
    second: LatticePolytope
    first_smooth: bool
    second_smooth: bool
    ehrhart_first: EhrhartPolynomial
    ehrhart_second: EhrhartPolynomial
    equivalence: Optional[UnimodularMap]

    @property
    def holds(self) -> bool:
        return (
            self.first_smooth
            and self.second_smooth
            and self.ehrhart_first == self.ehrhart_second
            and self.equivalence is None
        )


def corollary_witness(d: int) -> CorollaryWitness:
    """
    Gamma(O(P1), -C(P2)) against Gamma(C(P1), -C(P2)) for the chain P1 and the
    bottom-pair poset P2 on d elements.
    """
    if d < 3:
        raise ClassificationError(f"the witness pair exists from d = 3 on, got {d}")
    chain, pair = chain_poset(d), bottom_pair_poset(d)
    first = gamma(PairingKind.OC, chain, pair)
    second = gamma(PairingKind.CC, chain, pair)
    return CorollaryWitness(
        first=first,
        second=second,
        first_smooth=is_smooth(first),
        second_smooth=is_smooth(second),
        ehrhart_first=ehrhart(first),
        ehrhart_second=ehrhart(second),
        equivalence=unimodular_equivalent(first, second),
    )
