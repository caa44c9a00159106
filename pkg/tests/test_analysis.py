import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polywedge import fixtures
from polywedge.analysis import (
    diameter,
    distance,
    distances_from,
    find_spindles,
    graph,
    make_path,
    nonrevisiting_search,
    revisit_check,
    shortest_paths,
    simplicity,
    spindle_certificate,
)
from polywedge.exact import affine_dim

CORPUS = fixtures.simple_corpus() + [fixtures.square_pyramid(), fixtures.lemma2_fixture()[0]]


def geometric_edges(p):
    """Edges as pairs whose smallest common face is a segment (affine dim 1)."""
    out = set()
    for u, v in itertools.combinations(range(p.num_vertices), 2):
        common = p.vertex_facets(u) & p.vertex_facets(v)
        face = [p.v.verts[j] for j in range(p.num_vertices) if common <= p.vertex_facets(j)]
        if affine_dim(face) == 1:
            out.add((u, v))
    return out


def as_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.num_vertices))
    h.add_edges_from(g.edges())
    return h


@pytest.mark.parametrize("p", CORPUS, ids=lambda p: p.name)
def test_graph_matches_geometric_oracle(p):
    assert set(graph(p).edges()) == geometric_edges(p)


@pytest.mark.parametrize("p", CORPUS, ids=lambda p: p.name)
def test_distances_match_networkx(p):
    g = graph(p)
    ref = dict(nx.all_pairs_shortest_path_length(as_nx(g)))
    for a in range(g.num_vertices):
        assert distances_from(g, a) == [ref[a][b] for b in range(g.num_vertices)]
    assert diameter(g) == nx.diameter(as_nx(g))


def test_simplex_graph_complete():
    g = graph(fixtures.simplex(4))
    assert len(g.edges()) == 10


def test_cube_graph_regular(cube3):
    g = graph(cube3)
    assert all(len(g.neighbors(j)) == 3 for j in range(8))
    assert len(g.edges()) == 12


def test_pyramid_adjacency(pyramid):
    g = graph(pyramid)
    y = pyramid.vertex_index("y")
    assert set(g.neighbors(y)) == {0, 1, 2, 3}
    assert not g.has_edge(pyramid.vertex_index("a"), pyramid.vertex_index("c"))


@pytest.mark.parametrize("p,expected", [(fixtures.cube(3), 3), (fixtures.cube(4), 4), (fixtures.simplex(3), 1), (fixtures.square_pyramid(), 2), (fixtures.pentagon(), 2)])
def test_diameter_examples(p, expected):
    assert diameter(graph(p)) == expected


def test_simplicity(pyramid, cube3):
    assert simplicity(cube3).is_simple
    rep = simplicity(pyramid)
    assert rep.nonsimple_vertices() == [pyramid.vertex_index("y")]
    # every edge at the apex has an endpoint that is not simple
    assert len(rep.nonsimple_edges()) == 4
    assert all(rep.edge_space_simple.values())


def test_nonsimple_edge_in_wedge(lemma2):
    p4 = lemma2[0]
    rep = simplicity(p4)
    yt, yb = p4.vertex_index("y^t"), p4.vertex_index("y_b")
    key = (min(yt, yb), max(yt, yb))
    assert not rep.edge_space_simple[key]


def test_cube_spindles(cube3):
    spindles = find_spindles(cube3)
    assert len(spindles) == 4
    assert all(s.length == 3 and s.all_but_simple for s in spindles)


def test_simplex_every_pair_is_spindle():
    s = fixtures.simplex(3)
    spindles = find_spindles(s)
    assert len(spindles) == 6 and all(c.length == 1 for c in spindles)


def test_pyramid_apex_spindle(pyramid):
    cert = spindle_certificate(pyramid, pyramid.vertex_index("y"), 0)
    assert cert is not None and cert.length == 1
    assert spindle_certificate(pyramid, 0, 1) is None


@pytest.mark.parametrize("p", CORPUS, ids=lambda p: p.name)
def test_spindle_facet_counts(p):
    for s in find_spindles(p):
        assert s.n1 + s.n2 >= p.n


def test_cube_detour_revisits(cube3):
    detour = ["v---", "v+--", "v++-", "v-+-", "v-++", "v+++"]
    rep = revisit_check(cube3, detour)
    witnesses = {cube3.facet_labels[r.facet]: (r.left_at, r.off_at, r.back_at) for r in rep.revisits}
    assert witnesses == {"x1-": (0, 1, 3), "x1+": (1, 3, 5)}


def test_geodesic_is_nonrevisiting(cube3):
    assert revisit_check(cube3, ["v---", "v+--", "v++-", "v+++"]).nonrevisiting


def test_make_path_rejects_non_edges(cube3):
    with pytest.raises(ValueError):
        make_path(cube3, ["v---", "v+++"])
    with pytest.raises(ValueError):
        make_path(cube3, ["v---", "v+--", "v---"])


def test_shortest_paths_cube(cube3):
    paths = shortest_paths(graph(cube3), 0, 7)
    assert len(paths) == 6 and all(len(s) == 4 for s in paths)


def brute_nonrevisiting_exists(p, g, x, y):
    for seq in nx.all_simple_paths(as_nx(g), x, y):
        if revisit_check(p, list(seq), g).nonrevisiting:
            return True
    return False


@pytest.mark.parametrize("p", [fixtures.square_pyramid(), fixtures.pentagon(), fixtures.prism(fixtures.simplex(2))], ids=lambda p: p.name)
def test_search_matches_brute_force(p):
    g = graph(p)
    for x, y in itertools.permutations(range(p.num_vertices), 2):
        found = nonrevisiting_search(p, x, y, g)
        assert (found is not None) == brute_nonrevisiting_exists(p, g, x, y)
        if found is not None:
            assert revisit_check(p, found, g).nonrevisiting
            assert found.vertices[0] == x and found.vertices[-1] == y


CORPUS_IDS = st.sampled_from(range(len(CORPUS)))


@settings(max_examples=60, deadline=None)
@given(CORPUS_IDS, st.data())
def test_distance_is_a_metric(k, data):
    p = CORPUS[k]
    g = graph(p)
    pick = st.integers(0, p.num_vertices - 1)
    a, b, c = data.draw(pick), data.draw(pick), data.draw(pick)
    assert distance(g, a, b) == distance(g, b, a)
    assert distance(g, a, c) <= distance(g, a, b) + distance(g, b, c)
    assert (distance(g, a, b) == 0) == (a == b)
