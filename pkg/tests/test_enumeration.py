import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_force_vertices
from polywedge import fixtures
from polywedge.core import HRep, NotCanonicalError, NotFullDimensionalError, VRep
from polywedge.enumeration import (
    InfeasibleError,
    UnboundedError,
    facets_from_v,
    remove_redundant,
    vertices_from_h,
    vertices_from_inequalities,
)
from polywedge.exact import rank


def _points(v):
    return {c[1:] for c in v.verts}


def test_cube_vertices(cube3):
    v = vertices_from_h(cube3.h)
    assert _points(v) == set(itertools.product((-1, 1), repeat=3))


def test_simplex_vertices():
    s = fixtures.simplex(3)
    expected = {(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)}
    assert _points(vertices_from_h(s.h)) == expected


def test_unbounded_halfline():
    with pytest.raises(UnboundedError):
        vertices_from_h(HRep(1, ((Fraction(-1), Fraction(1)),)))


def test_unbounded_cone_in_plane():
    rows = ((-1, 1, 0), (-1, 0, 1))
    with pytest.raises(UnboundedError):
        vertices_from_h(HRep(2, rows))


def test_infeasible_general_system():
    # x >= 2 and x <= 1 as rows r with r . [1; x] <= 0
    with pytest.raises(InfeasibleError):
        vertices_from_inequalities([(Fraction(2), Fraction(-1)), (Fraction(-1), Fraction(1))])


def test_general_system_off_origin():
    # 1 <= x <= 3 does not contain the origin
    assert vertices_from_inequalities([(1, -1), (-3, 1)]) == [(1,), (3,)]


def test_facets_from_v_cube(cube3):
    h = facets_from_v(cube3.v)
    assert set(h.normals) == set(cube3.h.normals)


def test_facets_from_v_ignores_interior_point(cube3):
    v = VRep(3, cube3.v.verts + ((Fraction(1), Fraction(0), Fraction(1, 2), Fraction(0)),))
    assert set(facets_from_v(v).normals) == set(cube3.h.normals)


def test_facets_from_v_rank_deficient():
    v = VRep.from_points([(1, 0, 0), (0, 1, 0), (-1, -1, 0)])
    with pytest.raises(NotFullDimensionalError):
        facets_from_v(v)


def test_facets_from_v_origin_outside():
    v = VRep.from_points([(1, 1), (2, 1), (1, 2)])
    with pytest.raises(NotCanonicalError) as info:
        facets_from_v(v)
    assert info.value.suggested_translation == (Fraction(-4, 3), Fraction(-4, 3))


def test_remove_redundant_drops_duplicates_and_slack(cube3):
    slack = (Fraction(-1), Fraction(1, 2), Fraction(0), Fraction(0))
    h = HRep(3, cube3.h.normals + (cube3.h.normals[2], slack))
    assert remove_redundant(h).normals == cube3.h.normals


def test_remove_redundant_keeps_weakly_touching_row():
    # x1 + x2 <= 2 touches the square only at the vertex (1, 1)
    sq = fixtures.cube(2)
    corner = (Fraction(-1), Fraction(1, 2), Fraction(1, 2))
    assert remove_redundant(HRep(2, sq.h.normals + (corner,))).normals == sq.h.normals


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.integers(0, 6), st.integers(0, 10**6))
def test_dd_matches_brute_force(d, extra, seed):
    h = fixtures.random_hrep(random.Random(seed), d, d + 1 + extra)
    assert _points(vertices_from_h(h)) == brute_force_vertices(h.normals)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 4), st.integers(0, 6), st.integers(0, 10**6))
def test_insertion_order_independence(d, extra, seed):
    rng = random.Random(seed)
    h = fixtures.random_hrep(rng, d, d + 1 + extra)
    rows = list(h.normals)
    rng.shuffle(rows)
    assert vertices_from_h(HRep(d, tuple(rows))) == vertices_from_h(h)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 4), st.integers(0, 6), st.integers(0, 10**6))
def test_remove_redundant_idempotent_and_vertices_are_tight(d, extra, seed):
    h = fixtures.random_hrep(random.Random(seed), d, d + 1 + extra)
    r = remove_redundant(h)
    assert remove_redundant(r) == r
    v = vertices_from_h(r)
    assert v == vertices_from_h(h)
    for c in v.verts:
        active = [row for row in r.normals if sum(a * b for a, b in zip(row, c)) == 0]
        assert rank(active) == d
