"""
Tests for posets, their ideals, antichains and linear extensions.
"""

import pytest

from src.poset.core import PosetError, PosetSubset, SubsetKind, parse_poset, rho, subset_from_labels
from src.poset.families import (
    antichain_masks,
    antichain_poset,
    antichains,
    count_linear_extensions,
    count_linear_extensions_bruteforce,
    enumerate_posets,
    has_common_linear_extension,
    ideal_from_antichain,
    ideal_masks,
    ideals,
    linear_extensions,
    max_elements,
    star,
    star_mask,
)


class TestParsePoset:
    def test_chain_relation(self, chain2):
        assert chain2.less(0, 1)
        assert not chain2.less(1, 0)
        assert chain2.covers() == [(1, 2)]
        assert chain2.to_dict() == {"d": 2, "covers": [[1, 2]]}

    def test_transitive_closure(self):
        poset = parse_poset(3, [(1, 2), (2, 3)])
        assert poset.leq(0, 2)
        # the implied relation is not a cover
        assert poset.covers() == [(1, 2), (2, 3)]

    def test_antichain_has_no_relations(self, antichain2):
        assert not antichain2.comparable(0, 1)
        assert antichain2.covers() == []
        assert "antichain" in antichain2.describe()

    @pytest.mark.parametrize(
        "d, covers",
        [
            (2, [(1, 2), (2, 1)]),
            (3, [(1, 2), (2, 3), (3, 1)]),
            (2, [(1, 1)]),
            (2, [(1, 3)]),
            (2, [(1, 2), (1, 2)]),
            (0, []),
        ],
    )
    def test_rejects_bad_input(self, d, covers):
        with pytest.raises(PosetError):
            parse_poset(d, covers)

    def test_minimal_and_maximal(self, pair3):
        assert pair3.minimal_in(pair3.full_mask) == 0b011
        assert pair3.maximal_in(pair3.full_mask) == 0b100
        assert pair3.maximal_in(0b011) == 0b011


class TestSubsets:
    def test_rho(self, chain3):
        ideal = subset_from_labels(chain3, [1, 2], SubsetKind.IDEAL)
        assert rho(ideal) == (1, 1, 0)
        assert rho(PosetSubset(chain3, 0, SubsetKind.IDEAL)) == (0, 0, 0)

    def test_kind_is_checked(self, chain3):
        with pytest.raises(PosetError):
            subset_from_labels(chain3, [2], SubsetKind.IDEAL)
        with pytest.raises(PosetError):
            subset_from_labels(chain3, [1, 2], SubsetKind.ANTICHAIN)

    def test_labels(self, pair3):
        subset = subset_from_labels(pair3, [1, 3])
        assert subset.elements() == (1, 3)
        assert len(subset) == 2
        assert 3 in subset and 2 not in subset
        assert str(subset) == "{p1,p3}"


class TestFamilies:
    def test_ideals_of_chain(self, chain2):
        assert ideal_masks(chain2) == [0, 0b01, 0b11]

    def test_ideals_of_antichain(self, antichain2):
        assert ideal_masks(antichain2) == [0, 0b01, 0b10, 0b11]

    def test_bottom_pair_families(self, pair3):
        assert ideal_masks(pair3) == [0, 0b001, 0b010, 0b011, 0b111]
        assert antichain_masks(pair3) == [0, 0b001, 0b010, 0b100, 0b011]
        assert antichain_masks(pair3, 2) == [0b011]

    def test_max_is_a_bijection(self, pair3):
        for ideal in ideals(pair3):
            assert ideal_from_antichain(pair3, max_elements(ideal)) == ideal
        assert sorted(max_elements(i).mask for i in ideals(pair3)) == sorted(a.mask for a in antichains(pair3))

    def test_max_elements_needs_an_ideal(self, pair3):
        with pytest.raises(PosetError):
            max_elements(subset_from_labels(pair3, [3]))

    def test_star_differs_from_intersection(self):
        # p1 below both p2 and p3
        poset = parse_poset(3, [(1, 2), (1, 3)])
        assert star_mask(poset, 0b011, 0b101) == 0
        first = subset_from_labels(poset, [1, 2], SubsetKind.IDEAL)
        second = subset_from_labels(poset, [1, 3], SubsetKind.IDEAL)
        assert star(first, second).mask == 0

    def test_star_of_antichain_ideals(self):
        poset = antichain_poset(3)
        assert star_mask(poset, 0b011, 0b110) == 0b010


class TestLinearExtensions:
    def test_counts(self, chain3, pair3):
        assert count_linear_extensions(chain3) == 1
        assert count_linear_extensions(pair3) == 2
        assert count_linear_extensions(antichain_poset(4)) == 24

    def test_listing(self, pair3):
        assert linear_extensions(pair3) == [(1, 2, 3), (2, 1, 3)]

    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    def test_matches_bruteforce(self, d):
        for poset in enumerate_posets(d):
            assert count_linear_extensions(poset) == count_linear_extensions_bruteforce(poset)

    def test_common_extension(self, example_pair, chain2, antichain2):
        assert not has_common_linear_extension(*example_pair)
        assert has_common_linear_extension(chain2, chain2)
        assert has_common_linear_extension(example_pair[1], antichain2)

    def test_common_extension_size_mismatch(self, chain2, chain3):
        with pytest.raises(PosetError):
            has_common_linear_extension(chain2, chain3)


class TestEnumeration:
    @pytest.mark.parametrize("d, expected", [(1, 1), (2, 3), (3, 19), (4, 219)])
    def test_labeled_counts(self, d, expected):
        assert len(list(enumerate_posets(d))) == expected

    def test_each_poset_once(self):
        posets = list(enumerate_posets(3))
        assert len(set(posets)) == len(posets)

    @pytest.mark.parametrize("d", [0, 6])
    def test_size_limits(self, d):
        with pytest.raises(PosetError):
            list(enumerate_posets(d))
