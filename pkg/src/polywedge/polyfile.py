"""Line-oriented text format for embedded polytopes.

::

    POLY 1
    d 3
    H 6            # n rows of d+1 rationals, each starting with -1
    -1 1 0 0
    ...
    V 8            # m rows of d+1 rationals, each starting with 1
    1 1 1 1
    ...
    LABELS F x1+ x1- ...
    LABELS V a b ...

``#`` starts a comment.  At least one of the H and V blocks is required.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import HRep, Polytope, VRep
from .enumeration import facets_from_v, vertices_from_h
from .exact import format_rational, parse_rational

FORMAT_VERSION = 1


class PolyParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class PolyFile:
    version: int
    d: int
    h: tuple[tuple[Fraction, ...], ...] | None = None
    v: tuple[tuple[Fraction, ...], ...] | None = None
    facet_labels: tuple[str, ...] | None = None
    vertex_labels: tuple[str, ...] | None = None


def _tokens(text: str):
    """Yield (line number, [(column, token), ...]) for non-blank lines."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = []
        col = 0
        for part in line.split():
            col = line.index(part, col)
            toks.append((col + 1, part))
            col += len(part)
        if toks:
            yield lineno, toks


def _int(tok, lineno, what) -> int:
    col, text = tok
    if not text.isdigit():
        raise PolyParseError(f"expected a nonnegative integer for {what}, got {text!r}", lineno, col)
    return int(text)


def parse_poly(text: str) -> PolyFile:
    lines = list(_tokens(text))
    if not lines:
        raise PolyParseError("empty file", 1)
    pos = 0

    def expect_header(keyword: str, what: str) -> int:
        nonlocal pos
        if pos >= len(lines):
            raise PolyParseError(f"missing '{keyword}' line", lines[-1][0] + 1)
        lineno, toks = lines[pos]
        if toks[0][1] != keyword or len(toks) != 2:
            raise PolyParseError(f"expected '{keyword} <{what}>'", lineno, toks[0][0])
        pos += 1
        return _int(toks[1], lineno, what)

    version = expect_header("POLY", "version")
    if version != FORMAT_VERSION:
        raise PolyParseError(f"unsupported format version {version}", lines[0][0])
    d = expect_header("d", "dim")

    def read_block(count: int, lead: int, kind: str):
        nonlocal pos
        rows = []
        for r in range(count):
            if pos >= len(lines):
                raise PolyParseError(f"{kind} block ends after {r} of {count} rows", lines[-1][0] + 1)
            lineno, toks = lines[pos]
            if len(toks) != d + 1:
                raise PolyParseError(f"{kind} row {r} has {len(toks)} entries, expected {d + 1}", lineno, toks[0][0])
            vals = []
            for col, t in toks:
                try:
                    vals.append(parse_rational(t))
                except ValueError as exc:
                    raise PolyParseError(str(exc), lineno, col) from None
            if vals[0] != lead:
                raise PolyParseError(f"{kind} row {r} must start with {lead}, got {toks[0][1]}", lineno, toks[0][0])
            rows.append(tuple(vals))
            pos += 1
        return tuple(rows)

    h = v = flabels = vlabels = None
    while pos < len(lines):
        lineno, toks = lines[pos]
        key = toks[0][1]
        if key in ("H", "V") and len(toks) == 2:
            count = _int(toks[1], lineno, "row count")
            pos += 1
            if key == "H":
                if h is not None:
                    raise PolyParseError("duplicate H block", lineno)
                h = read_block(count, -1, "H")
            else:
                if v is not None:
                    raise PolyParseError("duplicate V block", lineno)
                v = read_block(count, 1, "V")
        elif key == "LABELS" and len(toks) >= 2 and toks[1][1] in ("F", "V"):
            names = tuple(t for _, t in toks[2:])
            if toks[1][1] == "F":
                flabels = names
            else:
                vlabels = names
            pos += 1
        else:
            raise PolyParseError(f"unexpected {key!r}", lineno, toks[0][0])
    if h is None and v is None:
        raise PolyParseError("neither an H nor a V block is present", lines[-1][0])
    for names, block, kind in ((flabels, h, "F"), (vlabels, v, "V")):
        if names is not None:
            if block is None:
                raise PolyParseError(f"LABELS {kind} given without its block", lines[-1][0])
            if len(names) != len(block):
                raise PolyParseError(f"LABELS {kind} has {len(names)} names for {len(block)} rows", lines[-1][0])
    return PolyFile(version, d, h, v, flabels, vlabels)


def write_poly(pf: PolyFile) -> str:
    out = [f"POLY {pf.version}", f"d {pf.d}"]
    for key, block in (("H", pf.h), ("V", pf.v)):
        if block is not None:
            out.append(f"{key} {len(block)}")
            out.extend(" ".join(format_rational(x) for x in row) for row in block)
    if pf.facet_labels is not None:
        out.append("LABELS F " + " ".join(pf.facet_labels))
    if pf.vertex_labels is not None:
        out.append("LABELS V " + " ".join(pf.vertex_labels))
    return "\n".join(out) + "\n"


def to_polytope(pf: PolyFile, name: str = "P") -> Polytope:
    """Build the Polytope, enumerating whichever representation is missing."""
    h = HRep(pf.d, pf.h) if pf.h is not None else None
    v = VRep(pf.d, pf.v) if pf.v is not None else None
    if h is None:
        h = facets_from_v(v)
    if v is None:
        v = vertices_from_h(h)
    return Polytope.from_pair(h, v, pf.facet_labels, pf.vertex_labels, name=name)


def from_polytope(p: Polytope) -> PolyFile:
    return PolyFile(FORMAT_VERSION, p.d, p.h.normals, p.v.verts, p.facet_labels, p.vertex_labels)


def load(path, name: str | None = None) -> Polytope:
    with open(path, encoding="utf-8") as fh:
        pf = parse_poly(fh.read())
    return to_polytope(pf, name=name or str(path))


def dump(p: Polytope, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_poly(from_polytope(p)))
