"""
Buchberger verification for binomial generating sets of toric ideals.

Only pure difference binomials u - v occur, so a normal form is computed
term by term: u - v reduces to zero exactly when u and v have the same
normal form modulo the initial monomials.
"""

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy.polys.monomials import monomial_div, monomial_lcm, monomial_mul

from src.gamma.construct import PairingKind
from src.poset.core import Poset
from src.toric.ring import (
    Binomial,
    Monomial,
    MonomialOrderSpec,
    ToricError,
    generators_G,
    in_toric_ideal,
    monomial_order,
)
from src.utils.config import get_toric_config
from src.utils.logger import PerformanceLogger, get_logger

logger = get_logger(__name__)

Rule = Tuple[Monomial, Monomial]


def _rules(generators: Sequence[Binomial], order: MonomialOrderSpec) -> List[Rule]:
    return [(g.leading(order), g.trailing(order)) for g in generators if not g.is_zero()]


def normal_form(monomial: Monomial, rules: Sequence[Rule]) -> Monomial:
    """
    Rewrite ``monomial`` with lead -> trail rules until no lead divides it.
    Each step strictly lowers the monomial in a well-order, so this stops.
    """
    current = monomial
    while True:
        for lead, trail in rules:
            quotient = monomial_div(current, lead)
            if quotient is not None:
                current = monomial_mul(quotient, trail)
                break
        else:
            return current


def reduce(binomial: Binomial, generators: Sequence[Binomial],
           order: MonomialOrderSpec) -> Optional[Binomial]:
    """
    Fully reduced remainder of a binomial, or None when it reduces to zero.
    """
    rules = _rules(generators, order)
    remainder = Binomial(normal_form(binomial.first, rules), normal_form(binomial.second, rules))
    if remainder.is_zero():
        return None
    return remainder.oriented(order)


def s_polynomial(first: Binomial, second: Binomial,
                 order: MonomialOrderSpec) -> Optional[Binomial]:
    """S(g1, g2) for monic binomials; None when the two terms cancel."""
    lead_a, trail_a = first.leading(order), first.trailing(order)
    lead_b, trail_b = second.leading(order), second.trailing(order)
    lcm = monomial_lcm(lead_a, lead_b)
    left = monomial_mul(monomial_div(lcm, lead_a), trail_a)
    right = monomial_mul(monomial_div(lcm, lead_b), trail_b)
    if left == right:
        return None
    return Binomial(left, right)


def initial_monomials(generators: Sequence[Binomial], order: MonomialOrderSpec) -> List[Monomial]:
    """Distinct initial monomials, largest first."""
    leads = {g.leading(order) for g in generators}
    return sorted(leads, key=order.key, reverse=True)


def initial_is_first(generators: Sequence[Binomial], order: MonomialOrderSpec) -> bool:
    """Whether every generator is written with its initial monomial first."""
    return all(g.leading(order) == g.first for g in generators)


def toric_oracle(order: MonomialOrderSpec, degree_cap: Optional[int] = None) -> List[Binomial]:
    """
    A generating set of the toric ideal up to ``degree_cap``, found without
    reference to any binomial family.

    All monomials of degree 2..cap are grouped by image; inside a fibre every
    monomial is joined to the fibre's largest one.
    """
    cap = degree_cap or get_toric_config().degree_cap
    if cap < 2:
        raise ToricError(f"oracle degree cap must be at least 2, got {cap}")
    oracle: List[Binomial] = []
    for degree in range(2, cap + 1):
        monomials = []
        for combo in itertools.combinations_with_replacement(range(order.size), degree):
            exponents = [0] * order.size
            for position in combo:
                exponents[position] += 1
            monomials.append(tuple(exponents))
        images = np.array(monomials, dtype=np.int64) @ order.images
        fibres: Dict[Tuple[int, ...], List[Monomial]] = defaultdict(list)
        for monomial, image in zip(monomials, images):
            fibres[tuple(int(x) for x in image)].append(monomial)
        for members in fibres.values():
            if len(members) < 2:
                continue
            members.sort(key=order.key, reverse=True)
            oracle.extend(Binomial(members[0], other) for other in members[1:])
    logger.debug(f"Toric oracle up to degree {cap}: {len(oracle)} binomials")
    return oracle


def buchberger_verify(generators: Sequence[Binomial], order: MonomialOrderSpec,
                      oracle: Optional[Sequence[Binomial]] = None) -> bool:
    """
    Buchberger's criterion plus a completeness check.

    Every S-pair must reduce to zero (pairs with coprime initial monomials
    are skipped), and every binomial of ``oracle`` must reduce to zero, which
    shows the generators span the whole toric ideal up to the oracle's
    degree.

    Raises:
        ToricError: If a generator is not in the toric ideal
    """
    for g in generators:
        if not in_toric_ideal(order, g):
            raise ToricError(f"{g.describe(order)} is not in the toric ideal")
    rules = _rules(generators, order)

    def reduces_to_zero(b: Binomial) -> bool:
        return normal_form(b.first, rules) == normal_form(b.second, rules)

    for a, b in itertools.combinations(generators, 2):
        lead_a, lead_b = a.leading(order), b.leading(order)
        if monomial_lcm(lead_a, lead_b) == monomial_mul(lead_a, lead_b):
            continue
        s = s_polynomial(a, b, order)
        if s is not None and not reduces_to_zero(s):
            logger.debug(f"S-pair of {a.describe(order)} and {b.describe(order)} does not reduce to 0")
            return False

    for b in oracle or ():
        if not reduces_to_zero(b):
            logger.debug(f"Toric binomial {b.describe(order)} is not reached by the generators")
            return False
    return True


def initial_ideal_squarefree(generators: Sequence[Binomial], order: MonomialOrderSpec,
                             oracle: Optional[Sequence[Binomial]] = None) -> bool:
    """
    Whether every initial monomial has all exponents at most 1.

    Raises:
        ToricError: If the generators are not a Groebner basis
    """
    if not buchberger_verify(generators, order, oracle):
        raise ToricError("squarefreeness of the initial ideal needs a verified Groebner basis")
    return all(max(m) <= 1 for m in initial_monomials(generators, order))


def hilbert_function(initial: Sequence[Monomial], size: int, n: int) -> int:
    """
    Number of degree-n monomials in ``size`` variables divisible by no
    monomial of ``initial``.

    Exponents are chosen one variable at a time; a generator stays alive while
    every exponent chosen so far reaches its own, and a monomial is standard
    when no generator is alive at the end.
    """
    gens = [tuple(m) for m in initial]
    last = [max((i for i, e in enumerate(g) if e), default=-1) for g in gens]
    everything = (1 << len(gens)) - 1

    @lru_cache(maxsize=None)
    def count(position: int, remaining: int, alive: int) -> int:
        # a generator whose last variable is already fixed and still alive divides
        for k, end in enumerate(last):
            if alive >> k & 1 and end < position:
                return 0
        if position == size:
            return 1 if remaining == 0 else 0
        total = 0
        for e in range(remaining + 1):
            survivors = alive
            for k, g in enumerate(gens):
                if survivors >> k & 1 and g[position] > e:
                    survivors &= ~(1 << k)
            total += count(position + 1, remaining - e, survivors)
        return total

    return count(0, n, everything)


def _check_toric_dimension(first: Poset) -> None:
    limit = get_toric_config().max_dimension
    if first.d > limit:
        raise ToricError(f"toric verification is limited to d <= {limit}, got {first.d}")


def standard_monomial_ring(kind: PairingKind, first: Poset,
                           second: Poset) -> Tuple[MonomialOrderSpec, List[Monomial]]:
    """The ring R_OO, R_OC or R_CC as (variables with order, initial monomials)."""
    order = monomial_order(kind, first, second)
    return order, initial_monomials(generators_G(kind, first, second), order)


def hilbert_series_values(kind: PairingKind, first: Poset, second: Poset, up_to: int) -> List[int]:
    """Hilbert function of the standard-monomial ring for n = 0..up_to."""
    order, initial = standard_monomial_ring(kind, first, second)
    return [hilbert_function(initial, order.size, n) for n in range(up_to + 1)]


@dataclass
class GroebnerCheck:
    """Outcome of verifying one G_kind against its toric ideal."""

    kind: PairingKind
    generator_count: int
    oracle_size: int
    degree_cap: int
    groebner: bool
    initial_is_first: bool
    squarefree: Optional[bool]
    hilbert: List[int] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "generator_count": self.generator_count,
            "oracle_size": self.oracle_size,
            "degree_cap": self.degree_cap,
            "groebner": self.groebner,
            "initial_is_first": self.initial_is_first,
            "squarefree": self.squarefree,
            "hilbert": self.hilbert,
        }


def verify_pairing(kind: PairingKind, first: Poset, second: Poset,
                   degree_cap: Optional[int] = None) -> GroebnerCheck:
    """
    Build G_kind, run the Buchberger and oracle checks, and compute the
    Hilbert function of the standard-monomial ring for n = 0..d+1.

    Raises:
        ToricError: If d exceeds the configured toric limit
    """
    _check_toric_dimension(first)
    cap = degree_cap or get_toric_config().degree_cap
    with PerformanceLogger(logger, f"Groebner check {kind.value} d={first.d}", level=logging.DEBUG):
        order = monomial_order(kind, first, second)
        generators = generators_G(kind, first, second)
        oracle = toric_oracle(order, cap)
        verified = buchberger_verify(generators, order, oracle)
        leads = initial_monomials(generators, order)
        squarefree = all(max(m) <= 1 for m in leads) if verified else None
        hilbert = [hilbert_function(leads, order.size, n) for n in range(first.d + 2)] if verified else []
    return GroebnerCheck(
        kind=kind,
        generator_count=len(generators),
        oracle_size=len(oracle),
        degree_cap=cap,
        groebner=verified,
        initial_is_first=initial_is_first(generators, order),
        squarefree=squarefree,
        hilbert=hilbert,
    )
