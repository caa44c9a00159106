"""Mechanical checks of the nonrevisiting lemma, edge survival, vertex fates
and path lengths under the perturbed wedge, on concrete polytopes."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .analysis import (
    PathRecord,
    SpindleCertificate,
    distances_from,
    graph,
    make_path,
    nonrevisiting_search,
    revisit_check,
    shortest_paths,
    spindle_certificate,
)
from .constructions import (
    VertexFate,
    choose_epsilon,
    perturb_facet,
    perturbed_wedge,
    predict_fates,
    wedge,
)
from .core import Polytope, PreconditionError


# -- nonrevisiting lemma ------------------------------------------------------


@dataclass
class CountingCertificate:
    path: tuple[int, ...]
    x_counts: tuple[int, ...]  # facets of X at each path vertex, x and y included
    y_counts: tuple[int, ...]
    bookkeeping_ok: bool  # departures only from X, arrivals only in Y
    violation_step: int | None  # first step i (v_{i-1} -> v_i) breaking it
    nonrevisiting: bool
    x_zero_index: int | None  # first index whose vertex has left X completely
    table_matches: bool | None  # u_j on exactly d - j facets of X (nonrevisiting paths only)
    forced_revisit: bool  # length > d

    @property
    def consistent(self) -> bool:
        return self.bookkeeping_ok == self.nonrevisiting


def counting_certificate(p: Polytope, path: PathRecord, spindle: SpindleCertificate) -> CountingCertificate:
    seq = path.vertices
    if seq[0] != spindle.x or seq[-1] != spindle.y:
        raise PreconditionError("path does not run from the spindle's x to its y")
    for j in seq[1:-1]:
        if not p.is_simple_vertex(j):
            raise PreconditionError(f"interior vertex {p.vertex_labels[j]} is not simple")
    X, Y = spindle.X, spindle.Y
    x_counts = tuple(len(fs & X) for fs in path.facets)
    y_counts = tuple(len(fs & Y) for fs in path.facets)
    violation = None
    for i in range(1, len(seq)):
        before, after = path.facets[i - 1], path.facets[i]
        departures, arrivals = before - after, after - before
        if any(f in Y for f in departures) or any(f in X for f in arrivals):
            violation = i
            break
    nonrev = revisit_check(p, path).nonrevisiting
    table = None
    if nonrev:
        table = all(x_counts[j] == p.d - j for j in range(1, len(seq) - 1))
    x_zero = next((i for i, c in enumerate(x_counts) if c == 0), None)
    return CountingCertificate(
        seq, x_counts, y_counts, violation is None, violation, nonrev, x_zero, table, path.length > p.d,
    )


@dataclass
class Lemma1Report:
    spindle: SpindleCertificate
    precondition_met: bool
    reasons: list[str]
    search_result: PathRecord | None  # None means no nonrevisiting path exists
    certificates: list[CountingCertificate]

    @property
    def contradiction(self) -> bool:
        """A nonrevisiting path despite met preconditions (an implementation bug)."""
        return self.precondition_met and self.search_result is not None

    @property
    def verdict(self) -> str:
        if self.search_result is None:
            return "no nonrevisiting path"
        return "nonrevisiting path found"


def verify_lemma1(p: Polytope, x: int | str, y: int | str, max_certificates: int = 8) -> Lemma1Report:
    x, y = p.vertex_index(x), p.vertex_index(y)
    g = graph(p)
    spindle = spindle_certificate(p, x, y, g)
    if spindle is None:
        raise PreconditionError(f"({p.vertex_labels[x]}, {p.vertex_labels[y]}) is not a spindle")
    reasons = []
    if not spindle.all_but_simple:
        reasons.append("spindle is not all-but-simple")
    if spindle.length != p.d + 1:
        reasons.append(f"length {spindle.length} differs from d+1 = {p.d + 1}")
    found = nonrevisiting_search(p, x, y, g)
    certs = []
    for seq in shortest_paths(g, x, y, limit=max_certificates):
        path = make_path(p, seq, g)
        if all(p.is_simple_vertex(j) for j in seq[1:-1]):
            certs.append(counting_certificate(p, path, spindle))
    return Lemma1Report(spindle, not reasons, reasons, found, certs)


# -- edge survival ------------------------------------------------------------


@dataclass
class EdgeSurvivalReport:
    y: str
    w: str
    foot: str
    g: str
    hat_Y: list[str]
    hat_X: list[str]
    survived: bool
    edge: tuple[str, str] | None  # (image of w, y_0) in the perturbed wedge
    epsilon: Fraction
    target: str


def lemma2_violations(p: Polytope, foot: int, g: int, y: int, w: int) -> list[str]:
    gr = graph(p)
    out = []
    if p.is_simple_vertex(y):
        out.append("y is simple")
    if p.m.rows[foot][y]:
        out.append("foot is incident to y")
    if not p.m.rows[g][y]:
        out.append("G is not incident to y")
    if not gr.has_edge(y, w):
        out.append("[y, w] is not an edge")
        return out
    if not p.m.rows[g][w]:
        out.append("edge not in G")
    if not p.m.rows[foot][w]:
        out.append("w not on foot")
    if len(gr.edge_facets[(min(y, w), max(y, w))]) <= p.d - 1:
        out.append("edge is simple")
    return out


def verify_lemma2(
    p: Polytope, foot: int | str, g: int | str, y: int | str, w: int | str, eps: Fraction | str = "auto",
) -> EdgeSurvivalReport:
    foot, g = p.facet_index(foot), p.facet_index(g)
    y, w = p.vertex_index(y), p.vertex_index(w)
    violations = lemma2_violations(p, foot, g, y, w)
    if violations:
        raise PreconditionError(violations)
    common = p.vertex_facets(y) & p.vertex_facets(w)
    hat_y = sorted(common - {g})
    hat_x = sorted(p.vertex_facets(w) - common - {foot})
    out, imap, report = perturbed_wedge(p, foot, g, eps, y=y)
    w_image = imap.vertex_images[p.vertex_labels[w]][0]
    y0 = imap.distinguished["y_0"]
    survived = False
    if y0 is not None:
        survived = graph(out).has_edge(out.vertex_index(w_image), out.vertex_index(y0))
    return EdgeSurvivalReport(
        p.vertex_labels[y], p.vertex_labels[w], p.facet_labels[foot], p.facet_labels[g],
        [p.facet_labels[i] for i in hat_y], [p.facet_labels[i] for i in hat_x],
        survived, (w_image, y0) if survived else None, report.epsilon_used, out.name,
    )


# -- vertex fates -------------------------------------------------------------


@dataclass
class FateComparison:
    vertex: str
    case: str
    predicted: str
    observed: str
    match: bool
    detail: str = ""


@dataclass
class FateComparisonReport:
    polytope: str
    facet: str
    epsilon: Fraction
    rows: list[FateComparison] = field(default_factory=list)

    @property
    def g_incident(self) -> list[FateComparison]:
        return [r for r in self.rows if r.case != "off"]

    @property
    def mismatches(self) -> list[FateComparison]:
        return [r for r in self.rows if not r.match]

    @property
    def all_match(self) -> bool:
        return not self.mismatches


def _describe(fate: VertexFate) -> str:
    return fate.kind


def compare_fates(p: Polytope, g: int | str, eps: Fraction | str = "auto") -> FateComparisonReport:
    """Predict fates on p from the case analysis, then re-enumerate and compare."""
    g = p.facet_index(g)
    epsilon = choose_epsilon(p, g) if eps == "auto" else Fraction(eps)
    predicted = predict_fates(p, g, epsilon)
    report = perturb_facet(p, g, epsilon)
    out = report.p_out
    comparison = FateComparisonReport(p.name, p.facet_labels[g], epsilon)
    for pred, obs in zip(predicted, report.vertex_fates):
        match = pred.kind == obs.kind and pred.case == obs.case
        detail = ""
        if match and pred.kind == "slid":
            match = set(pred.edge) == set(obs.edge)
            detail = f"along [{p.vertex_labels[obs.edge[0]]}, {p.vertex_labels[obs.edge[1]]}]"
        elif match and pred.kind == "truncated":
            observed_edges = set()
            for k in obs.new_vertices:
                prov = report.new_vertices[k]
                observed_edges.add(prov.vertices[1] if prov.kind == "edge" else None)
            match = observed_edges == set(pred.new_vertices)
            detail = "new vertices " + ", ".join(out.vertex_labels[k] for k in obs.new_vertices)
        comparison.rows.append(
            FateComparison(p.vertex_labels[pred.vertex], pred.case, _describe(pred), _describe(obs), match, detail)
        )
    return comparison


def verify_vertex_fates(
    p: Polytope, foot: int | str, g: int | str, eps: Fraction | str = "auto",
) -> FateComparisonReport:
    foot, g = p.facet_index(foot), p.facet_index(g)
    if foot == g:
        raise PreconditionError("the perturbed facet must differ from the foot")
    wr = wedge(p, foot)
    return compare_fates(wr.w, wr.facet_map[g][0], eps)


# -- path images --------------------------------------------------------------


@dataclass
class PathImageReport:
    original_length: int
    new_distance: int
    increased: bool
    source: str
    target: str  # y_0, or the nearest image of y when y_0 is absent
    y0_present: bool
    source_revisits: int
    image_revisits: int  # on one shortest image path; reported, never asserted
    edge_violations: list[str] = field(default_factory=list)  # edge-survival preconditions on the last edge
    notes: list[str] = field(default_factory=list)

    @property
    def claim_applies(self) -> bool:
        return self.y0_present and not self.edge_violations

    @property
    def claim_holds(self) -> bool:
        """Vacuously true when the last edge does not meet the preconditions."""
        return not self.claim_applies or not self.increased


def path_image_length(
    p: Polytope, path: PathRecord | list, foot: int | str, g: int | str, eps: Fraction | str = "auto",
) -> PathImageReport:
    """Distance from x's image to y_0 in the perturbed wedge vs the path length.

    The distance is a stand-in for the length of a tight natural image.
    """
    if not isinstance(path, PathRecord):
        path = make_path(p, path)
    x, y = path.vertices[0], path.vertices[-1]
    foot, g = p.facet_index(foot), p.facet_index(g)
    if path.length >= 1:
        edge_violations = lemma2_violations(p, foot, g, y, path.vertices[-2])
    else:
        edge_violations = ["path has no edges"]
    out, imap, _ = perturbed_wedge(p, foot, g, eps, x=x, y=y)
    notes = list(imap.flags)
    gr = graph(out)
    sources = [out.vertex_index(lbl) for lbl in imap.vertex_images[p.vertex_labels[x]]]
    y0 = imap.distinguished["y_0"]
    if y0 is not None:
        targets = [out.vertex_index(y0)]
    else:
        notes.append("y_0 absent: measuring to the nearest image of y instead")
        targets = [out.vertex_index(lbl) for lbl in imap.vertex_images[p.vertex_labels[y]]]
    best = None
    for s in sources:
        dist = distances_from(gr, s)
        for t in targets:
            if dist[t] >= 0 and (best is None or dist[t] < best[0]):
                best = (dist[t], s, t)
    new_distance, s, t = best
    image_path = shortest_paths(gr, s, t, limit=1)[0]
    return PathImageReport(
        path.length, new_distance, new_distance > path.length,
        out.vertex_labels[s], out.vertex_labels[t], y0 is not None,
        len(revisit_check(p, path).revisits), len(revisit_check(out, list(image_path), gr).revisits),
        edge_violations, notes,
    )
