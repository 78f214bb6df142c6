"""
Exponent-vector model of the toric rings of the paired polytopes.

Variables are x_I for nonempty ideals I of P, y_J for nonempty ideals J of
Q, and one z standing in for x_empty = y_empty. A monomial is a tuple of
exponents indexed by variable position, position 0 being the largest
variable of the reverse lexicographic order and the last position being z.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np
from sympy.polys.orderings import grevlex

from src.gamma.construct import PairingKind
from src.poset.core import Poset, PosetError, bits, popcount
from src.poset.families import ideal_masks, star_mask
from src.utils.logger import get_logger

logger = get_logger(__name__)

Monomial = Tuple[int, ...]


class ToricError(ValueError):
    """Raised when a toric computation's precondition does not hold."""


class VariableClass(str, Enum):
    X = "x"
    Y = "y"
    Z = "z"


@dataclass(frozen=True)
class ToricVariable:
    """x_I, y_J or z; ``ideal`` is the bit-set of I or J (0 for z)."""

    cls: VariableClass
    ideal: int = 0

    def label(self, kind: PairingKind, poset: Optional[Poset] = None) -> str:
        """Display name, by max(ideal) where the ring indexes by antichains."""
        if self.cls is VariableClass.Z:
            return "z"
        by_max = kind is PairingKind.CC or (kind is PairingKind.OC and self.cls is VariableClass.Y)
        mask = poset.maximal_in(self.ideal) if by_max and poset is not None else self.ideal
        letter = "p" if self.cls is VariableClass.X else "q"
        inner = ",".join(f"{letter}{i + 1}" for i in bits(mask))
        return f"{self.cls.value}_max{{{inner}}}" if by_max else f"{self.cls.value}_{{{inner}}}"


def _class_order(masks: Sequence[int]) -> List[int]:
    return sorted((m for m in masks if m), key=lambda m: (popcount(m), m))


def variables(kind: PairingKind, first: Poset, second: Poset) -> List[ToricVariable]:
    """
    Every variable of the ring, ascending: z, then the y's, then the x's,
    each class by (ideal cardinality, bit-set).
    """
    if first.d != second.d:
        raise PosetError(f"paired posets must have the same size, got {first.d} and {second.d}")
    ascending = [ToricVariable(VariableClass.Z)]
    ascending += [ToricVariable(VariableClass.Y, m) for m in _class_order(ideal_masks(second))]
    ascending += [ToricVariable(VariableClass.X, m) for m in _class_order(ideal_masks(first))]
    return ascending


@dataclass(frozen=True)
class MonomialOrderSpec:
    """
    A reverse lexicographic order on the ring's variables.

    ``variables`` runs from the largest variable to the smallest, so the last
    position is z and a subset ideal always sits after its superset.
    """

    kind: PairingKind
    first: Poset
    second: Poset
    variables: Tuple[ToricVariable, ...]
    positions: Dict[ToricVariable, int] = field(compare=False, repr=False)
    images: np.ndarray = field(compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.variables)

    def key(self, monomial: Monomial):
        """Sort key: larger monomials have larger keys."""
        return grevlex(monomial)

    def monomial(self, *factors: ToricVariable) -> Monomial:
        """The product of the given variables (repeats allowed)."""
        exponents = [0] * self.size
        for var in factors:
            exponents[self.positions[var]] += 1
        return tuple(exponents)

    def x(self, ideal: int) -> ToricVariable:
        return ToricVariable(VariableClass.X, ideal) if ideal else ToricVariable(VariableClass.Z)

    def y(self, ideal: int) -> ToricVariable:
        return ToricVariable(VariableClass.Y, ideal) if ideal else ToricVariable(VariableClass.Z)

    def describe(self, monomial: Monomial) -> str:
        parts = []
        for var, e in zip(self.variables, monomial):
            if e:
                poset = self.first if var.cls is VariableClass.X else self.second
                name = var.label(self.kind, poset)
                parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts) or "1"


def _variable_image(kind: PairingKind, first: Poset, second: Poset, var: ToricVariable) -> List[int]:
    d = first.d
    if var.cls is VariableClass.Z:
        vector = [0] * d
    elif var.cls is VariableClass.X:
        mask = first.maximal_in(var.ideal) if kind is PairingKind.CC else var.ideal
        vector = [(mask >> i) & 1 for i in range(d)]
    else:
        mask = var.ideal if kind is PairingKind.OO else second.maximal_in(var.ideal)
        vector = [-((mask >> i) & 1) for i in range(d)]
    return vector + [1]


def monomial_order(kind: PairingKind, first: Poset, second: Poset) -> MonomialOrderSpec:
    """The order <_OO, <_OC or <_CC for the pair (P, Q)."""
    if kind not in PairingKind.pairings():
        raise ToricError(f"{kind.value} is not a pairing kind")
    ordered = tuple(reversed(variables(kind, first, second)))
    positions = {var: i for i, var in enumerate(ordered)}
    images = np.array(
        [_variable_image(kind, first, second, var) for var in ordered], dtype=np.int64
    )
    return MonomialOrderSpec(kind, first, second, ordered, positions, images)


def exponent_image(order: MonomialOrderSpec, monomial: Monomial) -> Tuple[int, ...]:
    """
    (t-exponents; s-degree) of the image of a monomial under the
    presentation map.
    """
    return tuple(int(x) for x in np.array(monomial, dtype=np.int64) @ order.images)


@dataclass(frozen=True)
class Binomial:
    """first - second, both monomials over the same ring."""

    first: Monomial
    second: Monomial

    @property
    def degree(self) -> int:
        return sum(self.first)

    def is_zero(self) -> bool:
        return self.first == self.second

    def leading(self, order: MonomialOrderSpec) -> Monomial:
        return max(self.first, self.second, key=order.key)

    def trailing(self, order: MonomialOrderSpec) -> Monomial:
        return min(self.first, self.second, key=order.key)

    def oriented(self, order: MonomialOrderSpec) -> "Binomial":
        """The same binomial up to sign with its initial monomial first."""
        return Binomial(self.leading(order), self.trailing(order))

    def describe(self, order: MonomialOrderSpec) -> str:
        return f"{order.describe(self.first)} - {order.describe(self.second)}"


def in_toric_ideal(order: MonomialOrderSpec, binomial: Binomial) -> bool:
    return exponent_image(order, binomial.first) == exponent_image(order, binomial.second)


def _incomparable_pairs(masks: List[int]) -> List[Tuple[int, int]]:
    pairs = []
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if a & b != a and a & b != b:
                pairs.append((a, b))
    return pairs


def generators_G(kind: PairingKind, first: Poset, second: Poset) -> List[Binomial]:
    """
    The binomial generating set G_OO, G_OC or G_CC.

    Pure-x relations come from incomparable ideal pairs of P, pure-y ones
    from incomparable ideal pairs of Q, and mixed relations from every
    (I, J, i) with p_i maximal in I and q_i maximal in J. The second x
    factor of the pure-x relation is x_{I n I'} for OO and OC, x_{I*I'} for
    CC; the pure-y relation uses y_{J n J'} for OO only.

    Raises:
        ToricError: If an emitted binomial is not in the toric ideal
    """
    order = monomial_order(kind, first, second)
    p_ideals = ideal_masks(first)
    q_ideals = ideal_masks(second)
    found: Set[Binomial] = set()

    def emit(u: Sequence[ToricVariable], v: Sequence[ToricVariable]) -> None:
        binomial = Binomial(order.monomial(*u), order.monomial(*v))
        if binomial.is_zero():
            return
        if not in_toric_ideal(order, binomial):
            raise ToricError(f"generator {binomial.describe(order)} is not in the toric ideal")
        found.add(binomial)

    for a, b in _incomparable_pairs(p_ideals):
        meet = star_mask(first, a, b) if kind is PairingKind.CC else a & b
        emit([order.x(a), order.x(b)], [order.x(a | b), order.x(meet)])

    for a, b in _incomparable_pairs(q_ideals):
        meet = a & b if kind is PairingKind.OO else star_mask(second, a, b)
        emit([order.y(a), order.y(b)], [order.y(a | b), order.y(meet)])

    for ideal in p_ideals:
        for other in q_ideals:
            common = first.maximal_in(ideal) & second.maximal_in(other)
            for i in bits(common):
                if kind is PairingKind.CC:
                    smaller_x = first.down_closure(first.maximal_in(ideal) & ~(1 << i))
                else:
                    smaller_x = ideal & ~(1 << i)
                if kind is PairingKind.OO:
                    smaller_y = other & ~(1 << i)
                else:
                    smaller_y = second.down_closure(second.maximal_in(other) & ~(1 << i))
                emit([order.x(ideal), order.y(other)], [order.x(smaller_x), order.y(smaller_y)])

    generators = sorted(found, key=lambda g: (order.key(g.first), order.key(g.second)), reverse=True)
    logger.debug(f"G_{kind.value}: {len(generators)} generators")
    return generators
