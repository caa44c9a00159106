"""Wedge, facet perturbation, perturbed wedge and two-point suspension.

Label scheme (propagated through every construction):

* wedge over a facet with label L: top/base facets are ``T``/``B`` when
  those names are free, otherwise ``L^t``/``L_b``; a vertex v off the foot
  becomes ``v^t`` (top copy) and ``v_b`` (base copy);
* perturbation: the point where the vertical edge ``[s^t, s_b]`` meets the
  perturbed facet is ``s_0``; a vertex that slides is renamed ``v'``; other
  new vertices on an old edge [v, u] are ``v|u``; new vertices on revealed
  edges from a retained vertex v are ``v|r<k>``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from .analysis import PolytopeGraph, edge_space_rank, graph
from .core import HRep, Polytope, PreconditionError, VRep, facet_vertex_count
from .enumeration import PolytopeError, facets_from_v, vertices_from_h
from .exact import dot

MAX_HALVINGS = 64


# -- wedge --------------------------------------------------------------------


@dataclass(frozen=True)
class WedgeResult:
    w: Polytope
    foot: int  # facet index of F in the input polytope
    top_facet: int
    base_facet: int
    facet_map: dict[int, tuple[int, ...]]
    vertex_map: dict[int, tuple[int, ...]]  # foot vertex -> (image,), others -> (top, base)


def _wedge_facet_labels(p: Polytope, foot: int) -> tuple[str, str]:
    others = set(p.facet_labels) - {p.facet_labels[foot]}
    if "T" not in others and "B" not in others:
        return "T", "B"
    label = p.facet_labels[foot]
    return f"{label}^t", f"{label}_b"


def wedge(p: Polytope, foot: int | str) -> WedgeResult:
    """Wedge over a facet, written down directly from the block formulas."""
    foot = p.facet_index(foot)
    h_f = p.h.normals[foot]
    zero, one = Fraction(0), Fraction(1)

    top_label, base_label = _wedge_facet_labels(p, foot)
    rows = [h_f + (one,), h_f + (-one,)]
    facet_labels = [top_label, base_label]
    facet_map = {foot: (0, 1)}
    for i, r in enumerate(p.h.normals):
        if i != foot:
            facet_map[i] = (len(rows),)
            rows.append(r + (zero,))
            facet_labels.append(p.facet_labels[i])

    in_foot = [j for j in range(p.num_vertices) if p.m.rows[foot][j]]
    off_foot = [j for j in range(p.num_vertices) if not p.m.rows[foot][j]]
    cols = [p.v.verts[j] + (zero,) for j in in_foot]
    vertex_labels = [p.vertex_labels[j] for j in in_foot]
    vertex_map = {j: (k,) for k, j in enumerate(in_foot)}
    for j in off_foot:
        height = -dot(h_f, p.v.verts[j])  # > 0 off the foot
        vertex_map[j] = (len(cols),)
        cols.append(p.v.verts[j] + (height,))
        vertex_labels.append(f"{p.vertex_labels[j]}^t")
    for j in off_foot:
        vertex_map[j] += (len(cols),)
        cols.append(p.v.verts[j] + (dot(h_f, p.v.verts[j]),))
        vertex_labels.append(f"{p.vertex_labels[j]}_b")

    d = p.d + 1
    w = Polytope.from_pair(
        HRep(d, tuple(rows)), VRep(d, tuple(cols)), facet_labels, vertex_labels,
        name=f"wedge({p.name},{p.facet_labels[foot]})",
    )
    expected = (p.n + 1, 2 * p.num_vertices - facet_vertex_count(p, foot))
    if (w.n, w.num_vertices) != expected:
        raise RuntimeError(f"wedge produced {(w.n, w.num_vertices)}, expected {expected}")
    for j in range(w.num_vertices):
        if sum(w.m.column(j)) < d:
            raise RuntimeError(f"wedge vertex {w.vertex_labels[j]} lies on fewer than d facets")
    return WedgeResult(w, foot, 0, 1, facet_map, vertex_map)


# -- perturbation -------------------------------------------------------------

FateKind = Literal["retained", "slid", "truncated"]
Case = Literal["foot", "top", "base", "off"]


@dataclass(frozen=True)
class PerturbationSpec:
    facet: int | str
    epsilon: Fraction | Literal["auto"] = "auto"

    def __post_init__(self):
        if self.epsilon != "auto":
            eps = Fraction(self.epsilon)
            if eps <= 0:
                raise ValueError(f"epsilon must be > 0, got {eps}")
            object.__setattr__(self, "epsilon", eps)


@dataclass(frozen=True)
class VertexFate:
    vertex: int
    case: Case
    kind: FateKind
    edge: tuple[int, int] | None = None  # (vertex, neighbor) the slide follows
    new_vertices: tuple[int, ...] = ()  # indices into the perturbed polytope


@dataclass(frozen=True)
class Provenance:
    """Where a new vertex came from, in old vertex indices.

    kind "edge": on the open old edge (a, b), a being cut off;
    kind "extension": on the ray from u through v, beyond v;
    kind "revealed": on a newly revealed edge from retained vertex v.
    """

    kind: Literal["edge", "extension", "revealed", "unknown"]
    vertices: tuple[int, ...]


@dataclass
class PerturbationReport:
    p_in: Polytope
    p_out: Polytope
    facet: int
    epsilon_used: Fraction
    vertex_fates: list[VertexFate]
    new_vertices: dict[int, Provenance]  # new-polytope index -> provenance
    retained_map: dict[int, int]  # old index -> new index
    stable: bool = True
    notes: list[str] = field(default_factory=list)

    def fate_of(self, label: str) -> VertexFate:
        return self.vertex_fates[self.p_in.vertex_index(label)]


def _perturbed_rows(p: Polytope, g: int, eps: Fraction) -> HRep:
    rows = list(p.h.normals)
    rows[g] = rows[g][:-1] + (Fraction(eps),)
    return HRep(p.d, tuple(rows))


def _check_vertical(p: Polytope, g: int) -> None:
    if p.h.normals[g][-1] != 0:
        raise PreconditionError(f"facet {p.facet_labels[g]} is not vertical (last normal coordinate is nonzero)")


def _combinatorial_type(p: Polytope, g: int, eps: Fraction) -> frozenset[int] | None:
    """Vertex facet-sets of the perturbed system (rows keep their identity)."""
    h = _perturbed_rows(p, g, eps)
    try:
        v = vertices_from_h(h)
    except PolytopeError:
        return None
    masks = []
    for c in v.verts:
        masks.append(sum(1 << i for i, r in enumerate(h.normals) if dot(r, c) == 0))
    return frozenset(masks)


def _sign_guard(p: Polytope, g: int, eps: Fraction) -> bool:
    """Vertices off G must stay strictly inside the perturbed halfspace."""
    row = _perturbed_rows(p, g, eps).normals[g]
    return all(dot(row, p.v.verts[j]) < 0 for j in range(p.num_vertices) if not p.m.rows[g][j])


def choose_epsilon(p: Polytope, g: int | str) -> Fraction:
    """First eps = 2^-k whose perturbed combinatorics match those at eps/2."""
    g = p.facet_index(g)
    _check_vertical(p, g)
    eps = Fraction(1)
    current = _combinatorial_type(p, g, eps)
    for _ in range(MAX_HALVINGS):
        half = _combinatorial_type(p, g, eps / 2)
        if current is not None and current == half and _sign_guard(p, g, eps):
            return eps
        eps /= 2
        current = half
    raise RuntimeError(f"perturbation of facet {p.facet_labels[g]} did not stabilize within {MAX_HALVINGS} halvings")


def _on_open_segment(w, a, b) -> bool:
    """w strictly between a and b (all homogenized, same leading 1)."""
    lam = None
    for wi, ai, bi in zip(w, a, b):
        diff = bi - ai
        if diff == 0:
            if wi != ai:
                return False
            continue
        t = (wi - ai) / diff
        if lam is None:
            lam = t
        elif t != lam:
            return False
    return lam is not None and 0 < lam < 1


def _beyond(w, u, v) -> bool:
    """w = v + t (v - u) for some t > 0."""
    return _on_open_segment(v, u, w)


def _vertical_stem(a: str, b: str) -> str | None:
    for top, base in ((a, b), (b, a)):
        if top.endswith("^t") and base.endswith("_b") and top[:-2] == base[:-2]:
            return top[:-2]
    return None


def perturb_facet(
    p: Polytope,
    spec: PerturbationSpec | int | str,
    eps: Fraction | str = "auto",
    *,
    _allow_zero: bool = False,
) -> PerturbationReport:
    """Tilt a vertical facet to last normal coordinate eps and re-enumerate.

    Fates are observed by comparing old and new vertex sets exactly.
    ``_allow_zero`` bypasses the eps > 0 check (identity sanity check only).
    """
    if _allow_zero and eps != "auto" and Fraction(eps) == 0:
        g = p.facet_index(spec.facet if isinstance(spec, PerturbationSpec) else spec)
        _check_vertical(p, g)
        epsilon = Fraction(0)
    else:
        if not isinstance(spec, PerturbationSpec):
            spec = PerturbationSpec(spec, eps)
        g = p.facet_index(spec.facet)
        _check_vertical(p, g)
        epsilon = choose_epsilon(p, g) if spec.epsilon == "auto" else spec.epsilon

    h_new = _perturbed_rows(p, g, epsilon)
    v_new = vertices_from_h(h_new)
    g_row = h_new.normals[g]
    old = p.v.verts
    old_index = {c: j for j, c in enumerate(old)}
    retained_map = {old_index[c]: k for k, c in enumerate(v_new.verts) if c in old_index}
    fresh = [k for k, c in enumerate(v_new.verts) if c not in old_index]
    values = [dot(g_row, c) for c in old]

    gr = graph(p)
    provenance: dict[int, Provenance] = {}
    for k in fresh:
        c = v_new.verts[k]
        prov = None
        for a, b in gr.edges():
            if _on_open_segment(c, old[a], old[b]):
                cut, other = (a, b) if values[a] > 0 else (b, a)
                prov = Provenance("edge", (cut, other))
                break
        if prov is None:
            for a, b in gr.edges():
                for u, v in ((a, b), (b, a)):
                    if v not in retained_map and values[v] < 0 and _beyond(c, old[u], old[v]):
                        prov = Provenance("extension", (u, v))
                        break
                if prov:
                    break
        provenance[k] = prov or Provenance("unknown", ())

    # revealed edges need the new graph; build a provisional polytope first
    provisional = Polytope.from_pair(h_new, v_new, p.facet_labels, [f"n{k}" for k in range(v_new.m)])
    gn = graph(provisional)
    for k in fresh:
        if provenance[k].kind == "unknown":
            for old_j, new_j in sorted(retained_map.items()):
                if gn.has_edge(k, new_j) and values[old_j] < 0 and p.m.rows[g][old_j]:
                    provenance[k] = Provenance("revealed", (old_j,))
                    break

    fates = []
    for j in range(p.num_vertices):
        in_g = bool(p.m.rows[g][j])
        case: Case
        if not in_g:
            case = "off"
        else:
            case = "foot" if values[j] == 0 else ("top" if values[j] > 0 else "base")
        if j in retained_map:
            fates.append(VertexFate(j, case, "retained"))
            continue
        mine = [
            k for k in fresh
            if (provenance[k].kind == "edge" and provenance[k].vertices[0] == j)
            or (provenance[k].kind == "extension" and provenance[k].vertices[1] == j)
        ]
        if len(mine) == 1:
            pv = provenance[mine[0]].vertices
            edge = pv if provenance[mine[0]].kind == "edge" else (pv[1], pv[0])
            fates.append(VertexFate(j, case, "slid", edge, tuple(mine)))
        else:
            fates.append(VertexFate(j, case, "truncated", None, tuple(mine)))

    labels = _new_labels(p, v_new.m, retained_map, provenance, fates)
    p_out = Polytope.from_pair(h_new, v_new, p.facet_labels, labels, name=f"perturb({p.name},{p.facet_labels[g]})")

    report = PerturbationReport(p, p_out, g, epsilon, fates, provenance, retained_map)
    for k, prov in provenance.items():
        if prov.kind == "unknown":
            report.notes.append(f"new vertex {labels[k]} has no provenance")
    if epsilon > 0:
        report.stable = _combinatorial_type(p, g, epsilon) == _combinatorial_type(p, g, epsilon / 2)
        if not report.stable:
            report.notes.append(f"combinatorics still changing at eps={epsilon}")
    return report


def _new_labels(p, count, retained_map, provenance, fates) -> list[str]:
    labels = [""] * count
    for j, k in retained_map.items():
        labels[k] = p.vertex_labels[j]
    revealed_count: dict[int, int] = {}
    for k in sorted(provenance):
        prov = provenance[k]
        names = [p.vertex_labels[j] for j in prov.vertices]
        if prov.kind == "edge":
            stem = _vertical_stem(*names)
            if stem is not None:
                label = f"{stem}_0"
            elif fates[prov.vertices[0]].kind == "slid":
                label = f"{names[0]}'"
            else:
                label = f"{names[0]}|{names[1]}"
        elif prov.kind == "extension":
            label = f"{names[1]}'"
        elif prov.kind == "revealed":
            r = revealed_count.get(prov.vertices[0], 0)
            revealed_count[prov.vertices[0]] = r + 1
            label = f"{names[0]}|r{r}"
        else:
            label = f"new{k}"
        labels[k] = label
    used: set[str] = set()
    for k, label in enumerate(labels):
        base, n = label, 1
        while label in used:
            label = f"{base}#{n}"
            n += 1
        labels[k] = label
        used.add(label)
    return labels


# -- perturbed wedge ----------------------------------------------------------


@dataclass
class NaturalImageMap:
    source: str
    target: str
    vertex_images: dict[str, tuple[str, ...]]
    facet_images: dict[str, tuple[str, ...]]
    distinguished: dict[str, str | None]
    flags: list[str] = field(default_factory=list)


def candidate_y(p: Polytope, foot: int, g: int) -> list[int]:
    """Nonsimple vertices on g and off the foot."""
    return [
        j for j in range(p.num_vertices)
        if not p.is_simple_vertex(j) and p.m.rows[g][j] and not p.m.rows[foot][j]
    ]


def perturbed_wedge(
    p: Polytope,
    foot: int | str,
    g: int | str,
    eps: Fraction | str = "auto",
    *,
    x: int | str | None = None,
    y: int | str | None = None,
) -> tuple[Polytope, NaturalImageMap, PerturbationReport]:
    foot, g = p.facet_index(foot), p.facet_index(g)
    if foot == g:
        raise PreconditionError("the perturbed facet must differ from the foot")
    flags = []
    candidates = candidate_y(p, foot, g)
    if y is None:
        if not candidates:
            flags.append("y not nonsimple: no nonsimple vertex on G off the foot")
        y = candidates[0] if candidates else None
    else:
        y = p.vertex_index(y)
        if p.is_simple_vertex(y):
            flags.append("y not nonsimple")
        if not p.m.rows[g][y]:
            flags.append("y not incident to G")
        if p.m.rows[foot][y]:
            flags.append("y incident to the foot")
    if x is not None:
        x = p.vertex_index(x)
        if not p.m.rows[foot][x]:
            flags.append("x not incident to the foot")

    wr = wedge(p, foot)
    g_image = wr.facet_map[g][0]
    report = perturb_facet(wr.w, g_image, eps)
    out = report.p_out.renamed(f"pwedge({p.name},{p.facet_labels[foot]},{p.facet_labels[g]})")

    def final_images(wj: int) -> tuple[str, ...]:
        fate = report.vertex_fates[wj]
        if fate.kind == "retained":
            return (out.vertex_labels[report.retained_map[wj]],)
        return tuple(out.vertex_labels[k] for k in fate.new_vertices)

    vertex_images = {
        p.vertex_labels[j]: tuple(im for wj in wr.vertex_map[j] for im in final_images(wj))
        for j in range(p.num_vertices)
    }
    facet_images = {
        p.facet_labels[i]: tuple(out.facet_labels[k] for k in wr.facet_map[i]) for i in range(p.n)
    }
    distinguished: dict[str, str | None] = {"x": None, "y": None, "y^t": None, "y_b": None, "y_0": None}
    if x is not None:
        distinguished["x"] = ",".join(vertex_images[p.vertex_labels[x]])
    if y is not None and len(wr.vertex_map[y]) == 2:
        top, base = wr.vertex_map[y]
        distinguished["y"] = p.vertex_labels[y]
        distinguished["y^t"] = wr.w.vertex_labels[top]
        distinguished["y_b"] = wr.w.vertex_labels[base]
        for k, prov in report.new_vertices.items():
            if prov.kind == "edge" and set(prov.vertices) == {top, base}:
                if out.v.verts[k][-1] != 0:
                    raise RuntimeError("y_0 must have last coordinate 0")
                distinguished["y_0"] = out.vertex_labels[k]
        if distinguished["y_0"] is None:
            flags.append("y_0 not created: the vertical edge through y did not survive")
    imap = NaturalImageMap(p.name, out.name, vertex_images, facet_images, distinguished, flags)
    report.p_out = out
    return out, imap, report


# -- predicted fates ----------------------------------------------------------


def terminated_edges(p: Polytope, g: int, j: int, gr: PolytopeGraph | None = None) -> list[int]:
    """Neighbors u of vertex j whose edge [j, u] is terminated by facet g.

    The edge counts when its line is still cut out without g (always true for
    edges leaving g; true inside g only for nonsimple edge spaces).
    """
    gr = gr or graph(p)
    out = []
    for u in gr.neighbors(j):
        facets = gr.edge_facets[(min(j, u), max(j, u))]
        if g not in facets or edge_space_rank(p, facets - {g}) == p.d - 1:
            out.append(u)
    return out


def predict_fates(p: Polytope, g: int | str, eps: Fraction, gr: PolytopeGraph | None = None) -> list[VertexFate]:
    """Fates from the case analysis alone, without re-enumerating.

    new_vertices here hold *old* neighbor indices u: one new vertex is
    expected on each listed edge [v, u].
    """
    g = p.facet_index(g)
    gr = gr or graph(p)
    row = _perturbed_rows(p, g, eps).normals[g]
    values = [dot(row, c) for c in p.v.verts]
    fates = []
    for j in range(p.num_vertices):
        if not p.m.rows[g][j]:
            fates.append(VertexFate(j, "off", "retained"))
            continue
        if values[j] == 0:
            fates.append(VertexFate(j, "foot", "retained"))
            continue
        term = terminated_edges(p, g, j, gr)
        if values[j] > 0:
            if len(term) == 1:
                fates.append(VertexFate(j, "top", "slid", (j, term[0]), (term[0],)))
            else:
                hit = tuple(u for u in term if values[u] < 0)
                fates.append(VertexFate(j, "top", "truncated", None, hit))
        else:
            if len(term) == 1:
                fates.append(VertexFate(j, "base", "slid", (j, term[0]), (term[0],)))
            else:
                fates.append(VertexFate(j, "base", "retained"))
    return fates


# -- dual construction --------------------------------------------------------


def two_point_suspension(p_dual: Polytope, u: int | str) -> Polytope:
    """Split vertex u into u+ and u- one dimension up (dual of the wedge)."""
    u = p_dual.vertex_index(u)
    zero, one = Fraction(0), Fraction(1)
    cols, labels = [], []
    for j, c in enumerate(p_dual.v.verts):
        if j == u:
            cols += [c + (one,), c + (-one,)]
            labels += [f"{p_dual.vertex_labels[j]}+", f"{p_dual.vertex_labels[j]}-"]
        else:
            cols.append(c + (zero,))
            labels.append(p_dual.vertex_labels[j])
    v = VRep(p_dual.d + 1, tuple(cols))
    return Polytope.from_pair(facets_from_v(v), v, vertex_labels=labels, name=f"S({p_dual.name},{p_dual.vertex_labels[u]})")
