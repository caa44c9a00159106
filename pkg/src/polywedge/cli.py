"""Command-line interface.

Exit codes: 0 success, 1 verification or validation failure, 2 usage or
parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import fixtures
from .analysis import diameter, find_spindles, graph, simplicity
from .constructions import perturb_facet, perturbed_wedge, wedge
from .core import Polytope, PolytopeError, validate
from .exact import format_rational, parse_rational
from .polyfile import PolyParseError, from_polytope, load, write_poly
from .verification import path_image_length, verify_lemma1, verify_lemma2, verify_vertex_fates

FIXTURES = {
    "triangle": fixtures.triangle,
    "simplex3": lambda: fixtures.simplex(3),
    "simplex4": lambda: fixtures.simplex(4),
    "cube3": lambda: fixtures.cube(3),
    "cube4": lambda: fixtures.cube(4),
    "pyramid": fixtures.square_pyramid,
    "pentagon": fixtures.pentagon,
    "lemma2": lambda: fixtures.lemma2_fixture()[0],
}


def _eps(text: str):
    return "auto" if text == "auto" else parse_rational(text)


def _jsonable(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_jsonable(v) for v in items]
    return value


def _summary(p: Polytope) -> dict:
    return {
        "name": p.name,
        "d": p.d,
        "facets": p.n,
        "vertices": p.num_vertices,
        "facet_labels": list(p.facet_labels),
        "vertex_labels": list(p.vertex_labels),
    }


def _labels(p: Polytope, idx) -> list[str]:
    return [p.vertex_labels[j] for j in idx]


def _emit_polytope(p: Polytope, args, result: dict) -> None:
    text = write_poly(from_polytope(p))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        result["output"] = args.output
    else:
        result["poly"] = text


def _fates(report) -> list[dict]:
    p, out = report.p_in, report.p_out
    rows = []
    for f in report.vertex_fates:
        rows.append({
            "vertex": p.vertex_labels[f.vertex],
            "case": f.case,
            "fate": f.kind,
            "edge": _labels(p, f.edge) if f.edge else None,
            "new_vertices": _labels(out, f.new_vertices),
        })
    return rows


def _provenance(report) -> list[dict]:
    p, out = report.p_in, report.p_out
    return [
        {"vertex": out.vertex_labels[k], "kind": prov.kind, "from": _labels(p, prov.vertices)}
        for k, prov in sorted(report.new_vertices.items(), key=lambda kv: report.p_out.vertex_labels[kv[0]])
    ]


# -- commands -----------------------------------------------------------------


def cmd_enumerate(p: Polytope, args) -> dict:
    result = _summary(p)
    _emit_polytope(p, args, result)
    return result


def cmd_analyze(p: Polytope, args) -> dict:
    g = graph(p)
    simp = simplicity(p, g)
    report = validate(p)
    if report.violations:
        args._violations.extend(report.violations)
    return {
        **_summary(p),
        "edges": len(g.edge_facets),
        "diameter": diameter(g),
        "simple": simp.is_simple,
        "nonsimple_vertices": _labels(p, simp.nonsimple_vertices()),
        "nonsimple_edges": [_labels(p, e) for e in simp.nonsimple_edges()],
        "spindles": [
            {
                "x": p.vertex_labels[s.x],
                "y": p.vertex_labels[s.y],
                "length": s.length,
                "n1": s.n1,
                "n2": s.n2,
                "all_but_simple": s.all_but_simple,
            }
            for s in find_spindles(p, g)
        ],
        "hirsch_bound": p.n - p.d,
    }


def cmd_wedge(p: Polytope, args) -> dict:
    wr = wedge(p, args.foot)
    result = _summary(wr.w)
    result["top"] = wr.w.facet_labels[wr.top_facet]
    result["base"] = wr.w.facet_labels[wr.base_facet]
    _emit_polytope(wr.w, args, result)
    return result


def cmd_perturb(p: Polytope, args) -> dict:
    report = perturb_facet(p, args.facet, _eps(args.eps))
    result = _summary(report.p_out)
    result.update(
        epsilon=report.epsilon_used,
        stable=report.stable,
        fates=_fates(report),
        new_vertices=_provenance(report),
        notes=report.notes,
    )
    if not report.stable:
        args._violations.append(f"combinatorics still changing at eps={format_rational(report.epsilon_used)}")
    _emit_polytope(report.p_out, args, result)
    return result


def cmd_pwedge(p: Polytope, args) -> dict:
    out, imap, report = perturbed_wedge(p, args.foot, args.facet, _eps(args.eps), x=args.x, y=args.y)
    result = _summary(out)
    result.update(
        epsilon=report.epsilon_used,
        stable=report.stable,
        fates=_fates(report),
        new_vertices=_provenance(report),
        distinguished=imap.distinguished,
        vertex_images=imap.vertex_images,
        facet_images=imap.facet_images,
        flags=imap.flags,
    )
    _emit_polytope(out, args, result)
    return result


def cmd_lemma1(p: Polytope, args) -> dict:
    rep = verify_lemma1(p, args.x, args.y)
    if rep.contradiction:
        args._violations.append("nonrevisiting path found although the lemma's hypotheses hold")
    return {
        "x": p.vertex_labels[rep.spindle.x],
        "y": p.vertex_labels[rep.spindle.y],
        "length": rep.spindle.length,
        "all_but_simple": rep.spindle.all_but_simple,
        "precondition_met": rep.precondition_met,
        "reasons": rep.reasons,
        "search_result": rep.verdict,
        "path": _labels(p, rep.search_result.vertices) if rep.search_result else None,
        "certificates": [
            {
                "path": _labels(p, c.path),
                "x_counts": c.x_counts,
                "y_counts": c.y_counts,
                "bookkeeping_ok": c.bookkeeping_ok,
                "violation_step": c.violation_step,
                "x_zero_index": c.x_zero_index,
                "table_matches": c.table_matches,
                "forced_revisit": c.forced_revisit,
            }
            for c in rep.certificates
        ],
    }


def cmd_lemma2(p: Polytope, args) -> dict:
    rep = verify_lemma2(p, args.foot, args.facet, args.y, args.w, _eps(args.eps))
    if not rep.survived:
        args._violations.append("the edge [w, y_0] is missing from the perturbed wedge")
    return {
        "y": rep.y, "w": rep.w, "foot": rep.foot, "g": rep.g,
        "hat_Y": rep.hat_Y, "hat_X": rep.hat_X,
        "survived": rep.survived,
        "edge": rep.edge,
        "epsilon": rep.epsilon,
    }


def cmd_fates(p: Polytope, args) -> dict:
    rep = verify_vertex_fates(p, args.foot, args.facet, _eps(args.eps))
    for r in rep.mismatches:
        args._violations.append(f"fate of {r.vertex}: predicted {r.predicted}, observed {r.observed}")
    return {
        "polytope": rep.polytope,
        "facet": rep.facet,
        "epsilon": rep.epsilon,
        "g_incident": len(rep.g_incident),
        "all_match": rep.all_match,
        "rows": [
            {"vertex": r.vertex, "case": r.case, "predicted": r.predicted, "observed": r.observed, "match": r.match}
            for r in rep.rows
        ],
    }


def cmd_path(p: Polytope, args) -> dict:
    rep = path_image_length(p, args.path.split(","), args.foot, args.facet, _eps(args.eps))
    if not rep.claim_holds:
        args._violations.append("the path image is longer than the original path")
    return {
        "original_length": rep.original_length,
        "new_distance": rep.new_distance,
        "increased": rep.increased,
        "source": rep.source,
        "target": rep.target,
        "y0_present": rep.y0_present,
        "source_revisits": rep.source_revisits,
        "image_revisits": rep.image_revisits,
        "claim_applies": rep.claim_applies,
        "edge_violations": rep.edge_violations,
        "notes": rep.notes,
    }


def cmd_fixture(args) -> dict:
    p = FIXTURES[args.name]()
    result = _summary(p)
    _emit_polytope(p, args, result)
    return result


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the resulting polytope here")
    common.add_argument("--format", choices=("json", "text"), default="json")

    with_file = argparse.ArgumentParser(add_help=False, parents=[common])
    with_file.add_argument("file", help="polytope file (POLY 1 format)")

    parser = argparse.ArgumentParser(prog="polywedge", description="Exact polytope constructions and checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("enumerate", parents=[with_file], help="complete the missing representation")
    sub.add_parser("analyze", parents=[with_file], help="graph, diameter, simplicity, spindles")
    sp = sub.add_parser("wedge", parents=[with_file], help="wedge over a facet")
    sp.add_argument("--foot", required=True)
    sp = sub.add_parser("perturb", parents=[with_file], help="perturb a vertical facet")
    sp.add_argument("--facet", required=True)
    sp.add_argument("--eps", default="auto")
    sp = sub.add_parser("pwedge", parents=[with_file], help="perturbed wedge")
    sp.add_argument("--foot", required=True)
    sp.add_argument("--facet", required=True)
    sp.add_argument("--eps", default="auto")
    sp.add_argument("--x")
    sp.add_argument("--y")
    sp = sub.add_parser("fixture", parents=[common], help="write a built-in fixture")
    sp.add_argument("name", choices=sorted(FIXTURES))

    vp = sub.add_parser("verify", help="verification runs")
    vsub = vp.add_subparsers(dest="check", required=True)
    sp = vsub.add_parser("lemma1", parents=[with_file])
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    sp = vsub.add_parser("lemma2", parents=[with_file])
    sp.add_argument("--foot", required=True)
    sp.add_argument("--facet", required=True)
    sp.add_argument("--y", required=True)
    sp.add_argument("--w", required=True)
    sp.add_argument("--eps", default="auto")
    sp = vsub.add_parser("fates", parents=[with_file])
    sp.add_argument("--foot", required=True)
    sp.add_argument("--facet", required=True)
    sp.add_argument("--eps", default="auto")
    sp = vsub.add_parser("path", parents=[with_file])
    sp.add_argument("--path", required=True, help="comma-separated vertex labels")
    sp.add_argument("--foot", required=True)
    sp.add_argument("--facet", required=True)
    sp.add_argument("--eps", default="auto")
    return parser


COMMANDS = {
    "enumerate": cmd_enumerate,
    "analyze": cmd_analyze,
    "wedge": cmd_wedge,
    "perturb": cmd_perturb,
    "pwedge": cmd_pwedge,
    ("verify", "lemma1"): cmd_lemma1,
    ("verify", "lemma2"): cmd_lemma2,
    ("verify", "fates"): cmd_fates,
    ("verify", "path"): cmd_path,
}


def _render_text(report: dict, indent: str = "") -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_render_text(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            for item in value:
                lines.append(_render_text(item, indent + "  - ").rstrip())
        elif isinstance(value, str) and "\n" in value:
            lines.append(f"{indent}{key}: |")
            lines.extend(f"{indent}  {ln}" for ln in value.rstrip("\n").split("\n"))
        else:
            lines.append(f"{indent}{key}: {json.dumps(value)}")
    return "\n".join(lines)


def cli_dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args._violations = []
    flags = {k: v for k, v in vars(args).items() if not k.startswith("_") and k not in ("command", "check", "file", "format")}
    name = args.command if args.command != "verify" else f"verify {args.check}"
    report = {"command": name, "input": {"file": getattr(args, "file", None), "flags": flags}}
    try:
        if args.command == "fixture":
            result = cmd_fixture(args)
        else:
            p = load(args.file, name=args.file)
            key = args.command if args.command != "verify" else ("verify", args.check)
            result = COMMANDS[key](p, args)
    except (PolyParseError, OSError) as exc:
        print(f"polywedge: {exc}", file=sys.stderr)
        return 2
    except (KeyError, IndexError) as exc:
        print(f"polywedge: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return 2
    except (PolytopeError, ValueError, RuntimeError) as exc:
        violations = getattr(exc, "violations", [str(exc)])
        report.update(result=None, violations=violations)
        _write(report, args.format)
        return 1
    report.update(result=_jsonable(result), violations=args._violations)
    _write(report, args.format)
    return 1 if args._violations else 0


def _write(report: dict, fmt: str) -> None:
    report = _jsonable(report)
    if fmt == "text":
        print(_render_text(report))
    else:
        print(json.dumps(report, indent=2, sort_keys=True))


def main() -> None:
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
