import pytest

from polywedge import fixtures
from polywedge.analysis import make_path, spindle_certificate
from polywedge.core import PreconditionError
from polywedge.verification import (
    compare_fates,
    counting_certificate,
    path_image_length,
    verify_lemma1,
    verify_lemma2,
    verify_vertex_fates,
)


def _cube_spindle(cube3):
    x, y = cube3.vertex_index("v---"), cube3.vertex_index("v+++")
    return spindle_certificate(cube3, x, y)


def test_counting_certificate_on_geodesic(cube3):
    path = make_path(cube3, ["v---", "v+--", "v++-", "v+++"])
    cert = counting_certificate(cube3, path, _cube_spindle(cube3))
    assert cert.x_counts == (3, 2, 1, 0)
    assert cert.y_counts == (0, 1, 2, 3)
    assert cert.bookkeeping_ok and cert.nonrevisiting and cert.table_matches
    assert cert.x_zero_index == 3 and not cert.forced_revisit
    assert cert.consistent


def test_counting_certificate_on_detour(cube3):
    detour = make_path(cube3, ["v---", "v+--", "v++-", "v-+-", "v-++", "v+++"])
    cert = counting_certificate(cube3, detour, _cube_spindle(cube3))
    # step 3 moves from x1+ (in Y) back onto x1- (in X)
    assert cert.violation_step == 3
    assert not cert.bookkeeping_ok and not cert.nonrevisiting
    assert cert.table_matches is None and cert.forced_revisit
    assert cert.consistent


def test_counting_certificate_wrong_endpoints(cube3):
    path = make_path(cube3, ["v+--", "v++-"])
    with pytest.raises(PreconditionError):
        counting_certificate(cube3, path, _cube_spindle(cube3))


def test_lemma1_on_cube_fails_precondition(cube3):
    rep = verify_lemma1(cube3, "v---", "v+++")
    assert not rep.precondition_met
    assert any("length 3" in r for r in rep.reasons)
    assert rep.verdict == "nonrevisiting path found" and not rep.contradiction
    assert len(rep.certificates) == 6
    assert all(c.table_matches for c in rep.certificates)


def test_lemma1_rejects_non_spindle(cube3):
    with pytest.raises(PreconditionError):
        verify_lemma1(cube3, "v---", "v+--")


def test_lemma1_nonsimple_spindle(pyramid):
    rep = verify_lemma1(pyramid, "y", "a")
    # only the apex is nonsimple
    assert rep.spindle.all_but_simple
    assert rep.reasons == ["length 1 differs from d+1 = 4"]


def test_lemma2_edge_survives(lemma2):
    p4, foot, g, y, w = lemma2
    rep = verify_lemma2(p4, foot, g, y, w)
    assert rep.survived
    assert rep.edge[0] == "y^t"
    assert rep.hat_Y == ["G2", "G3", "G4"] and rep.hat_X == []


def test_lemma2_edge_not_in_g(lemma2):
    p4, foot, _, y, w = lemma2
    with pytest.raises(PreconditionError) as info:
        verify_lemma2(p4, foot, "B", y, w)
    assert "edge not in G" in info.value.violations


def test_lemma2_simple_input(cube3):
    with pytest.raises(PreconditionError) as info:
        verify_lemma2(cube3, "x1+", "x2+", "v-+-", "v++-")
    assert "y is simple" in info.value.violations
    assert "edge is simple" in info.value.violations


@pytest.mark.parametrize("p,foot,g", [
    (fixtures.square_pyramid(), "F", "G1"),
    (fixtures.cube(3), "x1+", "x2+"),
    (fixtures.cube(3), "x1+", "x1-"),
])
def test_vertex_fates_match(p, foot, g):
    rep = verify_vertex_fates(p, foot, g)
    assert rep.all_match and rep.g_incident


def test_compare_fates_on_wedge(lemma2):
    for g in ("G1", "G2"):
        rep = compare_fates(lemma2[0], g)
        assert rep.all_match
        assert {r.case for r in rep.g_incident} >= {"top", "base"}


def test_path_image_on_lemma2_fixture(lemma2):
    p4, foot, g, y, w = lemma2
    rep = path_image_length(p4, ["a", "y^t", "y_b"], foot, g)
    assert rep.claim_applies and rep.claim_holds
    assert rep.new_distance <= rep.original_length


def test_path_image_along_surviving_edge(lemma2):
    p4, foot, g, y, w = lemma2
    rep = path_image_length(p4, [w, y], foot, g)
    assert rep.claim_applies and rep.new_distance == 1


def test_path_image_simple_edge_makes_no_claim(pyramid):
    rep = path_image_length(pyramid, ["a", "y"], "F", "G1")
    assert rep.increased and not rep.claim_applies and rep.claim_holds
    assert "edge is simple" in rep.edge_violations


def test_path_image_fallback(cube3):
    rep = path_image_length(cube3, ["v---", "v-+-", "v++-"], "x1-", "x1+")
    assert not rep.y0_present
    assert any("y_0 absent" in n for n in rep.notes)
