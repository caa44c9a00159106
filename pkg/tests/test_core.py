from fractions import Fraction

import pytest

from polywedge import fixtures
from polywedge.core import (
    HRep,
    InvalidPairError,
    Polytope,
    VRep,
    facet_vertex_count,
    incidence,
    incidence_isomorphic,
    polar_dual,
    validate,
)


def test_hrep_rejects_bad_lead():
    with pytest.raises(ValueError):
        HRep(2, ((Fraction(1), Fraction(0), Fraction(1)),))


def test_vrep_rejects_bad_lead():
    with pytest.raises(ValueError):
        VRep(2, ((Fraction(0), Fraction(0), Fraction(1)),))


def test_cube_incidence_column_sums(cube3):
    m = incidence(cube3.h, cube3.v)
    assert all(sum(m.column(j)) == 3 for j in range(m.m))
    assert all(sum(r) == 4 for r in m.rows)


def test_simplex_incidence_is_complement_of_identity():
    s = fixtures.simplex(3)
    for i, row in enumerate(s.m.rows):
        assert row == tuple(int(i != j) for j in range(4))


def test_violating_point_is_rejected(cube3):
    bad = VRep(3, cube3.v.verts[:-1] + ((Fraction(1), Fraction(2), Fraction(0), Fraction(0)),))
    with pytest.raises(InvalidPairError):
        incidence(cube3.h, bad)


@pytest.mark.parametrize("name", ["triangle", "pentagon", "square_pyramid"])
def test_fixtures_validate(name):
    assert validate(getattr(fixtures, name)()).ok


def test_validate_flags_duplicate_row(cube3):
    h = HRep(3, cube3.h.normals + (cube3.h.normals[0],))
    p = Polytope.from_pair(h, cube3.v)
    assert any("redundant facet" in v for v in validate(p).violations)


def test_validate_flags_lower_dimensional():
    # a square in the plane x3 = 0 embedded in R^3
    pts = [(1, a, b, 0) for a in (-1, 1) for b in (-1, 1)]
    v = VRep.from_points([p[1:] for p in pts])
    h = HRep(3, ((-1, 1, 0, 0), (-1, -1, 0, 0), (-1, 0, 1, 0), (-1, 0, -1, 0)))
    p = Polytope.from_pair(h, v)
    assert any("not full-dimensional" in v for v in validate(p).violations)


def test_polar_dual_of_cube_is_octahedron(cube3):
    oct_ = polar_dual(cube3)
    assert (oct_.n, oct_.num_vertices) == (8, 6)
    assert oct_.m == cube3.m.transpose()
    assert validate(oct_).ok


@pytest.mark.parametrize("p", [fixtures.cube(3), fixtures.simplex(3), fixtures.square_pyramid(), fixtures.pentagon()])
def test_polar_dual_involution(p):
    back = polar_dual(polar_dual(p))
    assert back.h == p.h and back.v == p.v and back.m == p.m


def test_simplex_is_self_dual():
    s = fixtures.simplex(4)
    assert incidence_isomorphic(s, polar_dual(s))


def test_cube_not_isomorphic_to_octahedron(cube3):
    assert not incidence_isomorphic(cube3, polar_dual(cube3))
    assert incidence_isomorphic(cube3.m, cube3.m.transpose().transpose())


def test_facet_vertex_count(pyramid, cube3):
    assert facet_vertex_count(pyramid, "F") == 4
    assert facet_vertex_count(pyramid, "G1") == 3
    assert facet_vertex_count(cube3, 0) == 4


def test_label_lookup(pyramid):
    assert pyramid.vertex_index("y") == 4
    assert pyramid.vertex_facets(4) == frozenset({1, 2, 3, 4})
    assert not pyramid.is_simple_vertex(4)
    with pytest.raises(KeyError):
        pyramid.vertex_index("nope")
