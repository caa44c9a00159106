"""Edge graph, distances, simplicity and nonrevisiting paths of a polytope.

Everything here is combinatorial: it only reads the incidence matrix
(plus exact ranks of facet normals for face spaces).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .core import Polytope
from .exact import affine_dim, rank


@dataclass(frozen=True)
class PolytopeGraph:
    labels: tuple[str, ...]
    adjacency: tuple[tuple[int, ...], ...]
    edge_facets: dict[tuple[int, int], frozenset[int]] = field(compare=False)

    @property
    def num_vertices(self) -> int:
        return len(self.adjacency)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, a: int, b: int) -> bool:
        return b in self.adjacency[a]

    def edges(self) -> list[tuple[int, int]]:
        return sorted(self.edge_facets)


def _mask_set(mask: int) -> frozenset[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def graph(p: Polytope) -> PolytopeGraph:
    """Adjacency by the minimal-common-face criterion.

    u and v span an edge iff they are the only vertices lying on every
    facet that contains both.
    """
    masks = p.vertex_masks
    m = len(masks)
    adj: list[list[int]] = [[] for _ in range(m)]
    edge_facets = {}
    for u in range(m):
        for v in range(u + 1, m):
            common = masks[u] & masks[v]
            if all(w == u or w == v or masks[w] & common != common for w in range(m)):
                adj[u].append(v)
                adj[v].append(u)
                edge_facets[(u, v)] = _mask_set(common)
    # neighbors in label order so searches are deterministic
    order = {j: p.vertex_labels[j] for j in range(m)}
    adjacency = tuple(tuple(sorted(a, key=lambda j: (order[j], j))) for a in adj)
    return PolytopeGraph(p.vertex_labels, adjacency, edge_facets)


def distances_from(g: PolytopeGraph, a: int) -> list[int]:
    dist = [-1] * g.num_vertices
    dist[a] = 0
    queue = deque([a])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def distance(g: PolytopeGraph, a: int, b: int) -> int:
    return distances_from(g, a)[b]


def diameter(g: PolytopeGraph) -> int:
    return max((max(distances_from(g, a)) for a in range(g.num_vertices)), default=0)


def shortest_paths(g: PolytopeGraph, a: int, b: int, limit: int | None = None) -> list[tuple[int, ...]]:
    """Shortest a-b paths in neighbor order, at most ``limit`` of them."""
    to_b = distances_from(g, b)
    out: list[tuple[int, ...]] = []

    def walk(path: list[int]) -> bool:
        u = path[-1]
        if u == b:
            out.append(tuple(path))
            return limit is not None and len(out) >= limit
        for w in g.adjacency[u]:
            if to_b[w] == to_b[u] - 1:
                path.append(w)
                if walk(path):
                    return True
                path.pop()
        return False

    if to_b[a] >= 0:
        walk([a])
    return out


# -- simplicity ---------------------------------------------------------------


@dataclass
class SimplicityReport:
    vertex_simple: tuple[bool, ...]
    edge_space_simple: dict[tuple[int, int], bool]
    edge_simple: dict[tuple[int, int], bool]

    @property
    def is_simple(self) -> bool:
        return all(self.vertex_simple)

    def nonsimple_vertices(self) -> list[int]:
        return [j for j, s in enumerate(self.vertex_simple) if not s]

    def nonsimple_edges(self) -> list[tuple[int, int]]:
        return [e for e, s in sorted(self.edge_simple.items()) if not s]


def simplicity(p: Polytope, g: PolytopeGraph | None = None) -> SimplicityReport:
    g = g or graph(p)
    vertex_simple = tuple(p.is_simple_vertex(j) for j in range(p.num_vertices))
    space = {e: len(fs) == p.d - 1 for e, fs in g.edge_facets.items()}
    simple = {e: space[e] and vertex_simple[e[0]] and vertex_simple[e[1]] for e in space}
    return SimplicityReport(vertex_simple, space, simple)


def face_simplicity(p: Polytope, vertices: Iterable[int]) -> tuple[bool, bool]:
    """(space simple, simple) for the face spanned by ``vertices``.

    The space of a k-face is simple iff exactly d - k facets contain it; the
    face is simple iff its space is simple and so are all its proper faces.
    """
    masks = p.vertex_masks
    all_facets = (1 << p.n) - 1

    @lru_cache(maxsize=None)
    def check(face: frozenset[int]) -> tuple[bool, bool]:
        common = all_facets
        for j in face:
            common &= masks[j]
        k = affine_dim([p.v.verts[j] for j in face])
        space_ok = common.bit_count() == p.d - k
        if k == 0:
            return space_ok, space_ok
        simple = space_ok
        if simple:
            for i in range(p.n):
                if common >> i & 1:
                    continue
                sub = frozenset(j for j in face if masks[j] >> i & 1)
                if sub and affine_dim([p.v.verts[j] for j in sub]) == k - 1:
                    if not check(sub)[1]:
                        simple = False
                        break
        return space_ok, simple

    face = frozenset(vertices)
    common = all_facets
    for j in face:
        common &= masks[j]
    # close the vertex set to the whole face
    closed = frozenset(j for j in range(p.num_vertices) if masks[j] & common == common)
    return check(closed)


def edge_space_rank(p: Polytope, facets: Iterable[int]) -> int:
    return rank([p.h.normals[i] for i in facets]) if facets else 0


# -- spindles -----------------------------------------------------------------


@dataclass(frozen=True)
class SpindleCertificate:
    x: int
    y: int
    X: frozenset[int]
    Y: frozenset[int]
    length: int
    all_but_simple: bool

    @property
    def n1(self) -> int:
        return len(self.X)

    @property
    def n2(self) -> int:
        return len(self.Y)


def spindle_certificate(p: Polytope, x: int, y: int, g: PolytopeGraph | None = None) -> SpindleCertificate | None:
    """Certificate for (x, y), or None if some facet misses both."""
    masks = p.vertex_masks
    if masks[x] | masks[y] != (1 << p.n) - 1:
        return None
    g = g or graph(p)
    abs_ = all(p.is_simple_vertex(j) for j in range(p.num_vertices) if j not in (x, y))
    return SpindleCertificate(x, y, p.vertex_facets(x), p.vertex_facets(y), distance(g, x, y), abs_)


def find_spindles(p: Polytope, g: PolytopeGraph | None = None) -> list[SpindleCertificate]:
    g = g or graph(p)
    out = []
    for x in range(p.num_vertices):
        for y in range(x + 1, p.num_vertices):
            cert = spindle_certificate(p, x, y, g)
            if cert is not None:
                out.append(cert)
    return out


# -- paths and revisits -------------------------------------------------------


@dataclass(frozen=True)
class PathRecord:
    vertices: tuple[int, ...]
    facets: tuple[frozenset[int], ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1


def make_path(p: Polytope, vertices: Sequence[int | str], g: PolytopeGraph | None = None) -> PathRecord:
    """Validated PathRecord; raises ValueError for a non-path."""
    seq = tuple(p.vertex_index(v) for v in vertices)
    if not seq:
        raise ValueError("empty path")
    if len(set(seq)) != len(seq):
        raise ValueError("path repeats a vertex")
    g = g or graph(p)
    for a, b in zip(seq, seq[1:]):
        if not g.has_edge(a, b):
            raise ValueError(f"{p.vertex_labels[a]} and {p.vertex_labels[b]} are not adjacent")
    return PathRecord(seq, tuple(p.vertex_facets(j) for j in seq))


@dataclass(frozen=True)
class Revisit:
    facet: int
    left_at: int  # witness indices i < j < l: on at i, off at j, on again at l
    off_at: int
    back_at: int


@dataclass
class RevisitReport:
    revisits: list[Revisit]

    @property
    def nonrevisiting(self) -> bool:
        return not self.revisits


def revisit_check(p: Polytope, path: PathRecord | Sequence[int | str], g: PolytopeGraph | None = None) -> RevisitReport:
    if not isinstance(path, PathRecord):
        path = make_path(p, path, g)
    else:
        make_path(p, path.vertices, g)
    revisits = []
    for f in range(p.n):
        on = [f in fs for fs in path.facets]
        first_on = None
        off = None
        for idx, flag in enumerate(on):
            if flag and first_on is None:
                first_on = idx
            elif not flag and first_on is not None and off is None:
                off = idx
            elif flag and off is not None:
                revisits.append(Revisit(f, first_on, off, idx))
                break
    return RevisitReport(revisits)


def nonrevisiting_search(
    p: Polytope,
    x: int | str,
    y: int | str,
    g: PolytopeGraph | None = None,
    max_length: int | None = None,
) -> PathRecord | None:
    """Shortest nonrevisiting x-y path by iterative deepening, or None.

    A step to w is legal iff w lies on no abandoned facet (one incident to
    an earlier vertex but not to the current one).
    """
    x, y = p.vertex_index(x), p.vertex_index(y)
    g = g or graph(p)
    masks = p.vertex_masks
    to_y = distances_from(g, y)
    if x == y:
        return PathRecord((x,), (p.vertex_facets(x),))
    limit = max_length if max_length is not None else p.num_vertices - 1

    def dfs(path: list[int], seen: int, budget: int) -> bool:
        u = path[-1]
        if u == y:
            return True
        if to_y[u] > budget:
            return False
        abandoned = seen & ~masks[u]
        for w in g.adjacency[u]:
            if masks[w] & abandoned or w in path:
                continue
            path.append(w)
            if dfs(path, seen | masks[w], budget - 1):
                return True
            path.pop()
        return False

    for depth in range(to_y[x], limit + 1):
        path = [x]
        if dfs(path, masks[x], depth):
            return PathRecord(tuple(path), tuple(p.vertex_facets(j) for j in path))
    return None
