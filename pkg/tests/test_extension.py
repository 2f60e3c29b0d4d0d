"""Tests for toric_dh.extension."""

import random
from fractions import Fraction
from itertools import product

import pytest

from toric_dh.classify import AdmissibleQuadruple, dh_eval, dh_function, enumerate_admissible
from toric_dh.errors import (
    EpsilonTooLarge,
    InvalidFace,
    NotAdmissible,
    NotDelzant,
    OutOfDomain,
)
from toric_dh.extension import (
    BlowUpSpec,
    blow_up,
    build_extension,
    build_extension_via_blow_up,
    extension_vertex_census,
    fiber,
    height,
    project,
    verify_extension,
)
from toric_dh.lattice import is_delzant, is_reflexive, is_smooth
from toric_dh.loader import builtin_shape
from toric_dh.polytope import HalfSpace, contains, face_vertices, facet_with_normal, from_halfspaces, from_vertices

F = Fraction

DELZANT_SHAPES = ["square", "triangle", "hexagon", "pentagon"]


def admissible_over(polygons):
    return [q for p in polygons for q in enumerate_admissible(p)]


@pytest.fixture
def square():
    return builtin_shape("square")


@pytest.fixture
def cube():
    return builtin_shape("cube")


def bottom(p):
    return facet_with_normal(p, (0, 1))


def corner(p):
    return BlowUpSpec.of((facet_with_normal(p, (-1, 0)), facet_with_normal(p, (0, -1))))


class TestBlowUp:
    def test_cube_edge(self, cube):
        spec = BlowUpSpec.of((facet_with_normal(cube, (0, 1, 0)), facet_with_normal(cube, (0, 0, -1))))
        result = blow_up(cube, spec)
        expected = from_halfspaces(cube.halfspaces + (HalfSpace((0, 1, -1), F(-1)),))
        assert result == expected
        assert len(result.vertices) == 10

    def test_new_facet_replaces_edge(self, cube):
        spec = BlowUpSpec.of((facet_with_normal(cube, (0, 1, 0)), facet_with_normal(cube, (0, 0, -1))))
        result = blow_up(cube, spec)
        new = facet_with_normal(result, (0, 1, -1))
        assert len(face_vertices(result, [new])) == 4

    def test_square_corner(self, square):
        assert blow_up(square, corner(square)) == builtin_shape("pentagon")

    def test_epsilon_too_large(self, square):
        with pytest.raises(EpsilonTooLarge):
            blow_up(square, BlowUpSpec(corner(square).face, F(3)))

    def test_epsilon_at_clearance_bound(self, square):
        with pytest.raises(EpsilonTooLarge):
            blow_up(square, BlowUpSpec(corner(square).face, F(2)))

    def test_rational_epsilon_stays_smooth(self, square):
        result = blow_up(square, BlowUpSpec(corner(square).face, F(1, 2)))
        assert is_smooth(result)
        assert not is_delzant(result)

    def test_smooth_rational_polytope_accepted(self):
        half = from_vertices([(F(-1, 2), F(-1, 2)), (1, F(-1, 2)), (1, 1), (F(-1, 2), 1)])
        assert is_smooth(half) and not is_delzant(half)
        top = facet_with_normal(half, (0, -1))
        right = facet_with_normal(half, (-1, 0))
        result = blow_up(half, BlowUpSpec.of((top, right), F(1, 4)))
        assert len(result.vertices) == 5
        assert (F(3, 4), 1) in result.vertices

    def test_facet_is_not_a_face_of_codim_two(self, square):
        with pytest.raises(InvalidFace):
            blow_up(square, BlowUpSpec.of((bottom(square),)))

    def test_disjoint_facets(self, square):
        spec = BlowUpSpec.of((facet_with_normal(square, (0, 1)), facet_with_normal(square, (0, -1))))
        with pytest.raises(InvalidFace):
            blow_up(square, spec)

    def test_empty_face(self, square):
        with pytest.raises(InvalidFace):
            blow_up(square, BlowUpSpec(frozenset(), F(1)))

    def test_singular_polytope(self):
        p = builtin_shape("p2-dual")
        with pytest.raises(NotDelzant):
            blow_up(p, BlowUpSpec.of((0, 1)))

    def test_random_corner_blow_ups_stay_smooth(self):
        rng = random.Random(2024)
        for _ in range(50):
            p = builtin_shape(rng.choice(DELZANT_SHAPES + ["cube"]))
            v = rng.randrange(len(p.vertices))
            through = [i for i, inc in enumerate(p.incidence) if v in inc]
            facets = rng.sample(through, 2)
            result = blow_up(p, BlowUpSpec.of(facets, F(1, rng.randint(2, 4))))
            assert is_smooth(result)
            assert len(result.halfspaces) == len(p.halfspaces) + 1


class TestBuildExtension:
    def test_constant_is_cube(self, square, cube):
        assert build_extension(AdmissibleQuadruple(square, bottom(square), 0, 0)) == cube

    def test_sloped_prism(self, square):
        ext = build_extension(AdmissibleQuadruple(square, bottom(square), -1, 0))
        assert set(ext.vertices) == {
            (x, y, z)
            for x in (-1, 1)
            for y, z in ((-1, -1), (1, -1), (-1, 0), (1, 2))
        }

    def test_one_kink_is_cut_cube(self, square, cube):
        ext = build_extension(AdmissibleQuadruple(square, bottom(square), -1, 1))
        assert ext == from_halfspaces(cube.halfspaces + (HalfSpace((0, 1, -1), F(-1)),))

    def test_not_admissible(self):
        hexagon = builtin_shape("hexagon")
        with pytest.raises(NotAdmissible, match=r"\(iv\)"):
            build_extension(AdmissibleQuadruple(hexagon, bottom(hexagon), -1, 1))

    def test_reflexive_delzant(self, delzant_polygons):
        for q in admissible_over(delzant_polygons):
            ext = build_extension(q)
            assert ext.dim == 3
            assert is_reflexive(ext)
            assert is_delzant(ext)

    def test_blow_up_route_agrees(self, delzant_polygons):
        for q in admissible_over(delzant_polygons):
            assert build_extension_via_blow_up(q) == build_extension(q)

    def test_vertex_census(self, delzant_polygons):
        for q in admissible_over(delzant_polygons):
            assert set(build_extension(q).vertices) == set(extension_vertex_census(q))

    def test_cube_base(self):
        cube = builtin_shape("cube")
        q = AdmissibleQuadruple(cube, facet_with_normal(cube, (0, 0, 1)), -1, 2)
        ext = build_extension(q)
        assert ext.dim == 4
        assert is_reflexive(ext) and is_delzant(ext)
        assert verify_extension(ext, q)


class TestProjectionAndHeight:
    def test_project_cube(self, cube, square):
        assert project(cube) == square

    def test_project_extension(self, square):
        ext = build_extension(AdmissibleQuadruple(square, bottom(square), -1, 0))
        assert project(ext) == square

    def test_project_unit_box(self):
        box = from_vertices(product((0, 1), repeat=3))
        assert project(box) == from_vertices(product((0, 1), repeat=2))

    def test_cube_height(self, cube):
        assert height(cube, (0, 0)) == 2

    def test_prism_fiber(self, square):
        ext = build_extension(AdmissibleQuadruple(square, bottom(square), -1, 0))
        assert fiber(ext, (1, 1)) == (-1, 2)
        assert height(ext, (1, 1)) == 3

    def test_tent_fiber(self, square):
        ext = build_extension(AdmissibleQuadruple(square, bottom(square), -1, 2))
        assert fiber(ext, (0, 1)) == (0, 1)
        assert height(ext, (0, F(1, 2))) == F(3, 2)

    def test_height_is_dh_on_half_grid(self, delzant_polygons):
        steps = [F(i, 2) for i in range(-4, 5)]
        for p in delzant_polygons:
            grid = [w for w in product(steps, repeat=2) if contains(p, w)]
            for q in enumerate_admissible(p):
                ext, f = build_extension(q), dh_function(q)
                assert all(height(ext, w) == dh_eval(f, w) for w in grid)

    def test_outside(self, cube):
        with pytest.raises(OutOfDomain):
            height(cube, (2, 0))


class TestVerifyExtension:
    def test_cube_over_constant(self, square, cube):
        assert verify_extension(cube, AdmissibleQuadruple(square, bottom(square), 0, 0))

    def test_cube_over_sloped(self, square, cube):
        verdict = verify_extension(cube, AdmissibleQuadruple(square, bottom(square), -1, 0))
        assert not verdict
        assert verdict.failed == "height"

    def test_wrong_dimension(self, square):
        verdict = verify_extension(square, AdmissibleQuadruple(square, bottom(square), 0, 0))
        assert verdict.failed == "dimension"

    def test_not_reflexive(self, square):
        box = from_vertices(product((-1, 2), repeat=3))
        verdict = verify_extension(box, AdmissibleQuadruple(square, bottom(square), 0, 0))
        assert verdict.failed == "reflexive"

    def test_wrong_projection(self, square):
        triangle = builtin_shape("triangle")
        prism = from_vertices([v + (z,) for v in triangle.vertices for z in (-1, 1)])
        verdict = verify_extension(prism, AdmissibleQuadruple(square, bottom(square), 0, 0))
        assert verdict.failed == "projection"

    def test_every_admissible_quadruple(self, delzant_polygons):
        for q in admissible_over(delzant_polygons):
            assert verify_extension(build_extension(q), q)
