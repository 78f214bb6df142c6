"""
Order, chain and paired polytopes built from posets.
"""

from enum import Enum
from typing import List, Optional

from src.geometry.polytope import LatticePolytope, hull
from src.poset.core import LatticeVector, Poset, PosetError
from src.poset.families import antichain_masks, ideal_masks
from src.utils.logger import get_logger, log_polytope_info

logger = get_logger(__name__)


class PairingKind(str, Enum):
    """Which vertex families are paired: O for ideals, C for antichains."""

    OO = "OO"
    OC = "OC"
    CC = "CC"
    ORDER_ONLY = "O"
    CHAIN_ONLY = "C"

    @classmethod
    def parse(cls, text: str) -> "PairingKind":
        try:
            return cls(text.strip().upper())
        except ValueError:
            raise ValueError(f"unknown pairing kind {text!r}, expected OO, OC or CC") from None

    @classmethod
    def pairings(cls) -> List["PairingKind"]:
        return [cls.OO, cls.OC, cls.CC]


def _incidence(mask: int, d: int, sign: int = 1) -> LatticeVector:
    return tuple(sign * ((mask >> i) & 1) for i in range(d))


def order_points(poset: Poset) -> List[LatticeVector]:
    """rho(I) for every ideal I, the empty one included."""
    return [_incidence(m, poset.d) for m in ideal_masks(poset)]


def chain_points(poset: Poset) -> List[LatticeVector]:
    """rho(A) for every antichain A, the empty one included."""
    return [_incidence(m, poset.d) for m in antichain_masks(poset)]


def order_polytope(poset: Poset) -> LatticePolytope:
    """O(P)."""
    polytope = hull(order_points(poset))
    log_polytope_info(logger, polytope, f"O({poset.describe()})")
    return polytope


def chain_polytope(poset: Poset) -> LatticePolytope:
    """C(P)."""
    polytope = hull(chain_points(poset))
    log_polytope_info(logger, polytope, f"C({poset.describe()})")
    return polytope


def gamma_points(kind: PairingKind, first: Poset, second: Poset) -> List[LatticeVector]:
    """
    The point set whose hull is the paired polytope.

    Positive part: rho of the nonempty ideals of ``first`` (OO, OC) or of its
    nonempty antichains (CC). Negative part: minus rho of the nonempty ideals
    of ``second`` (OO) or of its nonempty antichains (OC, CC). The origin is
    always included.

    Raises:
        PosetError: If the posets differ in size or the kind is not a pairing
    """
    if first.d != second.d:
        raise PosetError(f"paired posets must have the same size, got {first.d} and {second.d}")
    if kind not in PairingKind.pairings():
        raise PosetError(f"{kind.value} is not a pairing kind")
    d = first.d
    positive = ideal_masks(first) if kind in (PairingKind.OO, PairingKind.OC) else antichain_masks(first)
    negative = ideal_masks(second) if kind is PairingKind.OO else antichain_masks(second)
    points = [(0,) * d]
    points += [_incidence(m, d) for m in positive if m]
    points += [_incidence(m, d, -1) for m in negative if m]
    return points


def gamma(kind: PairingKind, first: Poset, second: Poset) -> LatticePolytope:
    """
    Gamma(O(P), -O(Q)), Gamma(O(P), -C(Q)) or Gamma(C(P), -C(Q)).

    Args:
        kind: OO, OC or CC
        first: The poset P
        second: The poset Q

    Returns:
        Hull of gamma_points(kind, P, Q)
    """
    polytope = hull(gamma_points(kind, first, second))
    log_polytope_info(logger, polytope, f"Gamma[{kind.value}]")
    return polytope


def build(kind: PairingKind, first: Poset, second: Optional[Poset] = None) -> LatticePolytope:
    """Dispatch on any PairingKind, singletons included."""
    if kind is PairingKind.ORDER_ONLY:
        return order_polytope(first)
    if kind is PairingKind.CHAIN_ONLY:
        return chain_polytope(first)
    if second is None:
        raise PosetError(f"pairing {kind.value} needs two posets")
    return gamma(kind, first, second)
