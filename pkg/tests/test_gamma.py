"""
Tests for order, chain and paired polytopes.
"""

import pytest
import sympy

from src.gamma.construct import (
    PairingKind,
    build,
    chain_points,
    chain_polytope,
    gamma,
    gamma_points,
    order_points,
    order_polytope,
)
from src.geometry.ehrhart import ehrhart, normalized_volume
from src.geometry.properties import contains_origin_interior, is_fano, is_gorenstein
from src.poset.core import PosetError
from src.poset.families import count_linear_extensions, enumerate_posets, has_common_linear_extension


class TestOrderAndChain:
    def test_chain_vertices(self, chain2):
        assert order_polytope(chain2).vertex_set() == {(0, 0), (1, 0), (1, 1)}
        assert chain_polytope(chain2).vertex_set() == {(0, 0), (1, 0), (0, 1)}

    def test_antichain_gives_the_cube(self, antichain2):
        square = {(0, 0), (1, 0), (0, 1), (1, 1)}
        assert order_polytope(antichain2).vertex_set() == square
        assert chain_polytope(antichain2).vertex_set() == square

    def test_point_sets_include_the_origin(self, pair3):
        assert (0, 0, 0) in order_points(pair3)
        assert (0, 0, 0) in chain_points(pair3)
        assert len(order_points(pair3)) == len(chain_points(pair3)) == 5

    def test_bottom_pair(self, pair3):
        order, chain = order_polytope(pair3), chain_polytope(pair3)
        assert normalized_volume(order) == 2
        assert ehrhart(order) == ehrhart(chain)

    @pytest.mark.parametrize("d", [2, 3])
    def test_volume_counts_linear_extensions(self, d):
        for poset in enumerate_posets(d):
            assert normalized_volume(order_polytope(poset)) == count_linear_extensions(poset)
            assert ehrhart(order_polytope(poset)) == ehrhart(chain_polytope(poset))


class TestGamma:
    def test_example_pair(self, example_pair):
        first, second = example_pair
        oo = gamma(PairingKind.OO, first, second)
        assert list(ehrhart(oo).coefficients) == [1, sympy.Rational(5, 2), sympy.Rational(3, 2)]
        # the diagonal through the origin is an edge
        assert not contains_origin_interior(oo)
        for kind in (PairingKind.OC, PairingKind.CC):
            polytope = gamma(kind, first, second)
            assert contains_origin_interior(polytope)
            assert [int(c) for c in ehrhart(polytope).coefficients] == [1, 2, 2]

    def test_chains_with_a_common_extension(self, chain2):
        oo = gamma(PairingKind.OO, chain2, chain2)
        assert oo.vertex_set() == {(1, 0), (1, 1), (-1, 0), (-1, -1)}
        assert [int(c) for c in ehrhart(oo).coefficients] == [1, 2, 2]

    def test_chain_chain_of_chains_is_the_cross_polytope(self, chain2):
        cc = gamma(PairingKind.CC, chain2, chain2)
        assert cc.vertex_set() == {(1, 0), (0, 1), (-1, 0), (0, -1)}

    def test_reflexivity_over_all_pairs(self):
        posets = list(enumerate_posets(2))
        for first in posets:
            for second in posets:
                for kind in (PairingKind.OC, PairingKind.CC):
                    assert is_gorenstein(gamma(kind, first, second))
                common = has_common_linear_extension(first, second)
                oo = gamma(PairingKind.OO, first, second)
                assert (is_fano(oo) and is_gorenstein(oo)) == common

    def test_size_mismatch(self, chain2, chain3):
        with pytest.raises(PosetError):
            gamma(PairingKind.OO, chain2, chain3)

    def test_not_a_pairing(self, chain2):
        with pytest.raises(PosetError):
            gamma_points(PairingKind.ORDER_ONLY, chain2, chain2)


class TestPairingKind:
    def test_parse(self):
        assert PairingKind.parse("oc") is PairingKind.OC
        assert PairingKind.parse(" CC ") is PairingKind.CC
        with pytest.raises(ValueError):
            PairingKind.parse("xx")

    def test_build_dispatch(self, chain2):
        assert build(PairingKind.ORDER_ONLY, chain2) == order_polytope(chain2)
        assert build(PairingKind.CHAIN_ONLY, chain2) == chain_polytope(chain2)
        assert build(PairingKind.CC, chain2, chain2) == gamma(PairingKind.CC, chain2, chain2)
        with pytest.raises(PosetError):
            build(PairingKind.OC, chain2)
