"""
Tests for the toric rings, the binomial families and the Groebner checks.
"""

import pytest

from src.gamma.construct import PairingKind
from src.poset.core import parse_poset
from src.poset.families import antichain_poset
from src.toric.groebner import (
    buchberger_verify,
    hilbert_function,
    hilbert_series_values,
    initial_ideal_squarefree,
    reduce,
    s_polynomial,
    toric_oracle,
    verify_pairing,
)
from src.toric.ring import Binomial, ToricError, generators_G, in_toric_ideal, monomial_order, variables


class TestRing:
    def test_variable_counts(self, chain2, antichain2):
        assert len(variables(PairingKind.CC, chain2, chain2)) == 5
        assert len(variables(PairingKind.CC, antichain2, antichain2)) == 7
        single = antichain_poset(1)
        assert len(variables(PairingKind.OO, single, single)) == 3

    def test_ascending_labels(self, chain2):
        labels = [v.label(PairingKind.OO) for v in variables(PairingKind.OO, chain2, chain2)]
        assert labels == ["z", "y_{q1}", "y_{q1,q2}", "x_{p1}", "x_{p1,p2}"]

    def test_z_is_smallest(self, chain2):
        order = monomial_order(PairingKind.OC, chain2, chain2)
        assert order.variables[-1].label(PairingKind.OC) == "z"

    def test_membership(self, chain2):
        order = monomial_order(PairingKind.CC, chain2, chain2)
        # x_{p1} - z has the wrong degree-one image
        binomial = Binomial(order.monomial(order.x(0b01)), order.monomial(order.x(0)))
        assert not in_toric_ideal(order, binomial)

    def test_not_a_pairing(self, chain2):
        with pytest.raises(ToricError):
            monomial_order(PairingKind.ORDER_ONLY, chain2, chain2)


class TestGenerators:
    def test_chain_chain_of_chains(self, chain2):
        order = monomial_order(PairingKind.CC, chain2, chain2)
        generators = generators_G(PairingKind.CC, chain2, chain2)
        assert {g.describe(order) for g in generators} == {
            "x_max{p1}*y_max{q1} - z^2",
            "x_max{p2}*y_max{q2} - z^2",
        }

    def test_pure_x_relation(self, antichain2):
        order = monomial_order(PairingKind.OO, antichain2, antichain2)
        generators = generators_G(PairingKind.OO, antichain2, antichain2)
        expected = Binomial(
            order.monomial(order.x(0b01), order.x(0b10)),
            order.monomial(order.x(0b11), order.x(0)),
        )
        assert expected in generators

    @pytest.mark.parametrize("kind", [PairingKind.OC, PairingKind.CC])
    def test_every_generator_is_homogeneous(self, kind, chain3, pair3):
        for g in generators_G(kind, chain3, pair3):
            assert sum(g.first) == sum(g.second) == 2


class TestBuchberger:
    def test_basis_passes(self, chain2):
        order = monomial_order(PairingKind.CC, chain2, chain2)
        generators = generators_G(PairingKind.CC, chain2, chain2)
        assert buchberger_verify(generators, order, toric_oracle(order))
        assert initial_ideal_squarefree(generators, order, toric_oracle(order))

    def test_missing_generator_is_caught(self, chain2):
        order = monomial_order(PairingKind.CC, chain2, chain2)
        generators = generators_G(PairingKind.CC, chain2, chain2)[:1]
        oracle = toric_oracle(order)
        assert not buchberger_verify(generators, order, oracle)
        with pytest.raises(ToricError):
            initial_ideal_squarefree(generators, order, oracle)

    def test_s_polynomial_reduces(self, chain2):
        order = monomial_order(PairingKind.CC, chain2, chain2)
        first, second = generators_G(PairingKind.CC, chain2, chain2)
        s = s_polynomial(first, second, order)
        assert s is not None
        assert reduce(s, [first, second], order) is None
        assert reduce(first, [first], order) is None

    def test_rejects_binomials_outside_the_ideal(self, chain2):
        order = monomial_order(PairingKind.CC, chain2, chain2)
        bogus = Binomial(order.monomial(order.x(0b01)), order.monomial(order.y(0b01)))
        with pytest.raises(ToricError):
            buchberger_verify([bogus], order)

    def test_oracle_cap(self, chain2):
        order = monomial_order(PairingKind.CC, chain2, chain2)
        with pytest.raises(ToricError):
            toric_oracle(order, 1)


class TestHilbert:
    def test_free_counts(self):
        assert hilbert_function([], 3, 2) == 6
        assert hilbert_function([], 3, 0) == 1

    def test_one_generator(self):
        assert hilbert_function([(1, 1, 0)], 3, 2) == 5
        assert hilbert_function([(2, 0, 0)], 2, 2) == 2

    def test_verify_pairing(self, chain2):
        check = verify_pairing(PairingKind.CC, chain2, chain2)
        assert check.groebner
        assert check.initial_is_first
        assert check.squarefree
        assert check.hilbert == [1, 5, 13, 25]
        assert check.to_dict()["kind"] == "CC"

    def test_order_chain_matches_chain_chain(self, chain3, pair3):
        assert hilbert_series_values(PairingKind.OC, chain3, pair3, 4) == \
            hilbert_series_values(PairingKind.CC, chain3, pair3, 4)

    def test_dimension_limit(self):
        poset = parse_poset(4, [(1, 2)])
        with pytest.raises(ToricError):
            verify_pairing(PairingKind.CC, poset, poset)
