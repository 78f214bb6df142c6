"""
Tests for the exact lattice polytope engine.
"""

import json

import pytest
import sympy

from src.geometry.constructions import (
    cross_polytope,
    cube,
    del_pezzo,
    direct_sum,
    interval,
    pseudo_del_pezzo,
    smooth_extension,
)
from src.geometry.ehrhart import ehrhart, ehrhart_from_counts, normalized_volume, triangulation_volume
from src.geometry.equivalence import UnimodularMap, unimodular_equivalent, vertex_signatures
from src.geometry.lattice import interior_point_count, lattice_point_count, lattice_points
from src.geometry.polytope import (
    DegenerateHullError,
    LatticePolytope,
    NotFanoError,
    PolytopeError,
    check_dimension,
    hull,
)
from src.geometry.properties import (
    contains_origin_interior,
    dual_vertices,
    is_centrally_symmetric,
    is_fano,
    is_gorenstein,
    is_pseudo_symmetric,
    is_q_factorial,
    is_simplicial,
    is_smooth,
    symmetric_vertex_count,
)

# Fano but not reflexive: the facet through e1, e2 and the last vertex sits at height 2
NON_GORENSTEIN = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -2)]


def coefficients(polytope):
    return [int(c) if c.q == 1 else c for c in ehrhart(polytope).coefficients]


class TestHull:
    def test_cross_polytope(self):
        polytope = cross_polytope(2)
        assert len(polytope.vertices) == 4
        assert {(f.normal, f.offset) for f in polytope.facets} == {
            ((1, 1), 1), ((1, -1), 1), ((-1, 1), 1), ((-1, -1), 1)
        }

    def test_del_pezzo(self):
        polytope = del_pezzo(1)
        assert len(polytope.vertices) == 6
        assert len(polytope.facets) == 6

    def test_interior_point_is_not_a_vertex(self):
        polytope = hull([(0, 0), (1, 0), (1, 1), (-1, 0), (0, -1)])
        assert len(polytope.vertices) == 4
        assert (0, 0) not in polytope.vertex_set()

    def test_every_vertex_satisfies_every_facet(self):
        polytope = pseudo_del_pezzo(1)
        for vertex in polytope.vertices:
            assert polytope.contains(vertex)
        for facet in polytope.facets:
            assert len(facet.vertices) >= polytope.d

    def test_degenerate(self):
        with pytest.raises(DegenerateHullError):
            hull([(0, 0), (1, 1), (2, 2)])

    def test_mixed_dimensions(self):
        with pytest.raises(PolytopeError):
            hull([(0, 0), (1,)])

    def test_interval(self):
        segment = interval()
        assert segment.vertices == ((-1,), (1,))
        assert len(segment.facets) == 2

    @pytest.mark.parametrize("polytope", [del_pezzo(1), pseudo_del_pezzo(1), cube(3), interval()])
    def test_export_round_trip(self, polytope):
        text = json.dumps(polytope.to_dict())
        assert LatticePolytope.from_dict(json.loads(text)) == polytope

    def test_export_uses_plain_integers(self):
        facet = cross_polytope(3).to_dict()["facets"][0]
        assert type(facet["b"]) is int
        assert all(type(a) is int for a in facet["a"])

    def test_export_rejects_wrong_facets(self):
        payload = cross_polytope(2).to_dict()
        payload["facets"][0]["b"] = 2
        with pytest.raises(PolytopeError):
            LatticePolytope.from_dict(payload)

    def test_scaled(self):
        assert cross_polytope(2).scaled(2).vertex_set() == {(2, 0), (-2, 0), (0, 2), (0, -2)}
        with pytest.raises(PolytopeError):
            cross_polytope(2).scaled(0)

    def test_dimension_limit(self):
        check_dimension(6)
        with pytest.raises(PolytopeError):
            check_dimension(7)


class TestLatticePoints:
    def test_counts(self):
        polytope = cross_polytope(2)
        assert lattice_point_count(polytope, 0) == 1
        assert lattice_point_count(polytope, 3) == 25

    def test_chunking_does_not_change_counts(self):
        polytope = del_pezzo(1)
        assert lattice_point_count(polytope, 4, chunk_size=7) == lattice_point_count(polytope, 4)

    def test_points_of_the_unit_square(self):
        points = lattice_points(cube(2, 0, 1))
        assert sorted(map(tuple, points.tolist())) == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_interior(self):
        polytope = cross_polytope(2)
        assert interior_point_count(polytope, 0) == 0
        assert interior_point_count(polytope, 1) == 1
        assert interior_point_count(polytope, 2) == 5


class TestEhrhart:
    def test_cross_polytope(self):
        assert coefficients(cross_polytope(2)) == [1, 2, 2]

    def test_unit_square(self):
        assert coefficients(cube(2, 0, 1)) == [1, 2, 1]

    def test_interpolation(self):
        polynomial = ehrhart_from_counts([1, 5, 13])
        assert [int(c) for c in polynomial.coefficients] == [1, 2, 2]
        assert polynomial(3) == 25
        assert polynomial.normalized_volume() == 4

    def test_rational_coefficients(self):
        polynomial = ehrhart(hull([(0, 0), (1, 0), (0, 1)]))
        assert list(polynomial.coefficients) == [1, sympy.Rational(3, 2), sympy.Rational(1, 2)]
        assert polynomial.to_dict()["coefficients"] == ["1", "3/2", "1/2"]

    @pytest.mark.parametrize(
        "polytope, volume",
        [
            (interval(), 2),
            (del_pezzo(1), 6),
            (pseudo_del_pezzo(1), 5),
            (cross_polytope(3), 8),
            (cube(2), 8),
            (cube(3), 48),
        ],
    )
    def test_normalized_volume(self, polytope, volume):
        assert normalized_volume(polytope) == volume
        assert triangulation_volume(polytope) == volume

    def test_volume_is_multiplicative(self):
        assert normalized_volume(direct_sum(interval(), del_pezzo(1))) == 12
        three = direct_sum(direct_sum(interval(), interval()), interval())
        assert normalized_volume(three) == 8
        assert three == cross_polytope(3)


class TestFanoProperties:
    def test_cross_polytope_is_reflexive_and_smooth(self):
        polytope = cross_polytope(3)
        assert is_fano(polytope)
        assert is_gorenstein(polytope)
        assert is_smooth(polytope)

    def test_del_pezzo_blocks(self):
        assert is_smooth(del_pezzo(1))
        assert is_centrally_symmetric(del_pezzo(1))
        assert is_smooth(pseudo_del_pezzo(1))
        assert not is_centrally_symmetric(pseudo_del_pezzo(1))
        assert is_pseudo_symmetric(pseudo_del_pezzo(1))
        assert symmetric_vertex_count(pseudo_del_pezzo(1)) == 4

    def test_fano_but_not_gorenstein(self):
        polytope = hull(NON_GORENSTEIN)
        assert is_fano(polytope)
        assert not is_gorenstein(polytope)
        assert is_simplicial(polytope)
        assert not is_smooth(polytope)
        assert normalized_volume(polytope) == 5

    def test_cube_is_not_simplicial(self):
        polytope = cube(3)
        assert is_fano(polytope)
        assert not is_q_factorial(polytope)
        assert not is_smooth(polytope)

    def test_square_is_simplicial_but_not_smooth(self):
        polytope = cube(2)
        assert is_simplicial(polytope)
        assert not is_smooth(polytope)

    def test_not_fano(self):
        assert not contains_origin_interior(cube(2, 0, 1))
        assert not is_fano(cube(2, 0, 1))
        assert not is_fano(cube(2, -2, 2))
        with pytest.raises(NotFanoError):
            is_smooth(cube(2, 0, 1))
        with pytest.raises(NotFanoError):
            is_gorenstein(cube(2, -2, 2))

    def test_dual_of_cross_polytope(self):
        assert sorted(dual_vertices(cross_polytope(2))) == [(-1, -1), (-1, 1), (1, -1), (1, 1)]


class TestConstructions:
    def test_direct_sum_needs_interior_origin(self):
        with pytest.raises(PolytopeError):
            direct_sum(interval(), cube(2, 0, 1))

    @pytest.mark.parametrize("mode", ["pyramid", "symmetric"])
    def test_smooth_extension_keeps_smoothness(self, mode):
        extended = smooth_extension(interval(), mode)
        assert extended.d == 2
        assert is_smooth(extended)
        assert is_smooth(smooth_extension(del_pezzo(1), mode))

    def test_unknown_extension_mode(self):
        with pytest.raises(PolytopeError):
            smooth_extension(interval(), "prism")

    def test_higher_del_pezzo(self):
        polytope = del_pezzo(2)
        assert polytope.d == 4
        assert len(polytope.vertices) == 10
        assert is_smooth(polytope)


class TestEquivalence:
    def test_map_conventions(self):
        shear = UnimodularMap(((1, 1), (0, 1)))
        assert shear.apply((1, 0)) == (1, 1)
        assert shear.apply((0, 1)) == (0, 1)
        assert shear.inverse().apply(shear.apply((2, 3))) == (2, 3)
        assert UnimodularMap.identity(2).to_list() == [[1, 0], [0, 1]]

    def test_determinant_is_checked(self):
        with pytest.raises(PolytopeError):
            UnimodularMap(((2, 0), (0, 1)))

    def test_finds_a_witness(self):
        source = del_pezzo(1)
        target = source.transformed(UnimodularMap(((1, 1), (0, 1))))
        witness = unimodular_equivalent(source, target)
        assert witness is not None
        assert {witness.apply(v) for v in source.vertices} == target.vertex_set()

    def test_inequivalent(self):
        assert unimodular_equivalent(del_pezzo(1), pseudo_del_pezzo(1)) is None
        assert unimodular_equivalent(cross_polytope(2), cube(2)) is None

    def test_signatures(self):
        signatures = vertex_signatures(pseudo_del_pezzo(1))
        assert signatures[(1, 1)] == (2, False)
        assert signatures[(1, 0)] == (2, True)

    def test_needs_fano(self):
        with pytest.raises(NotFanoError):
            unimodular_equivalent(cube(2, 0, 1), cross_polytope(2))
