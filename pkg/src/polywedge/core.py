"""Embedded polytopes: paired H/V representations and their incidence.

A d-polytope with the origin in its interior is stored as

* facet normals ``[-1, h_i]`` (the halfspace ``h_i . x <= 1``), and
* vertices ``[1, x_j]``,

so that ``H^T V <= 0`` entrywise with equality exactly on incident pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx
from networkx.algorithms import isomorphism

from .exact import affine_dim, as_vector, dot, format_rational, rank

Vector = tuple[Fraction, ...]


class PolytopeError(ValueError):
    """Base class for malformed or inconsistent polytope data."""


class InvalidPairError(PolytopeError):
    """An H/V pair with a vertex strictly outside some halfspace."""


class NotCanonicalError(PolytopeError):
    """Input whose origin is not interior; carries a suggested translation."""

    def __init__(self, message: str, suggested_translation: Vector | None = None):
        if suggested_translation is not None:
            shift = " ".join(format_rational(x) for x in suggested_translation)
            message = f"{message} (suggested translation: {shift})"
        super().__init__(message)
        self.suggested_translation = suggested_translation


class NotFullDimensionalError(PolytopeError):
    pass


class PreconditionError(PolytopeError):
    """Raised with the individual precondition failures in ``violations``."""

    def __init__(self, violations: Sequence[str] | str):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class HRep:
    d: int
    normals: tuple[Vector, ...]

    def __post_init__(self):
        rows = tuple(as_vector(r) for r in self.normals)
        for i, r in enumerate(rows):
            if len(r) != self.d + 1:
                raise PolytopeError(f"facet row {i} has {len(r)} entries, expected {self.d + 1}")
            if r[0] != -1:
                raise NotCanonicalError(f"facet row {i} must start with -1, got {format_rational(r[0])}")
        object.__setattr__(self, "normals", rows)

    @property
    def n(self) -> int:
        return len(self.normals)

    @classmethod
    def from_inequalities(cls, a: Sequence[Sequence], b: Sequence) -> "HRep":
        """Canonical form of ``a_i . x <= b_i``; needs every ``b_i > 0``."""
        rows = []
        for i, (ai, bi) in enumerate(zip(a, b)):
            bi = Fraction(bi)
            if bi <= 0:
                raise NotCanonicalError(f"inequality {i} does not hold strictly at the origin")
            rows.append((Fraction(-1),) + tuple(Fraction(x) / bi for x in ai))
        return cls(len(a[0]) if a else 0, tuple(rows))


@dataclass(frozen=True)
class VRep:
    d: int
    verts: tuple[Vector, ...]

    def __post_init__(self):
        cols = tuple(as_vector(c) for c in self.verts)
        for j, c in enumerate(cols):
            if len(c) != self.d + 1:
                raise PolytopeError(f"vertex {j} has {len(c)} entries, expected {self.d + 1}")
            if c[0] != 1:
                raise PolytopeError(f"vertex {j} must start with 1, got {format_rational(c[0])}")
        object.__setattr__(self, "verts", cols)

    @property
    def m(self) -> int:
        return len(self.verts)

    @classmethod
    def from_points(cls, points: Iterable[Sequence]) -> "VRep":
        pts = [as_vector(p) for p in points]
        return cls(len(pts[0]) if pts else 0, tuple((Fraction(1),) + p for p in pts))


@dataclass(frozen=True)
class IncidenceMatrix:
    """0/1 grid; ``rows[i][j] == 1`` iff facet i contains vertex j."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "IncidenceMatrix":
        return IncidenceMatrix(tuple(zip(*self.rows)))

    @cached_property
    def vertex_masks(self) -> tuple[int, ...]:
        """Per vertex, the bitmask of incident facets."""
        masks = [0] * self.m
        for i, r in enumerate(self.rows):
            for j, bit in enumerate(r):
                if bit:
                    masks[j] |= 1 << i
        return tuple(masks)

    @cached_property
    def facet_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << j for j, bit in enumerate(r) if bit) for r in self.rows)


def incidence(h: HRep, v: VRep) -> IncidenceMatrix:
    if h.d != v.d:
        raise PolytopeError(f"dimension mismatch: H has d={h.d}, V has d={v.d}")
    rows = []
    for i, hi in enumerate(h.normals):
        row = []
        for j, vj in enumerate(v.verts):
            s = dot(hi, vj)
            if s > 0:
                raise InvalidPairError(f"vertex {j} lies strictly outside facet {i}")
            row.append(int(s == 0))
        rows.append(tuple(row))
    return IncidenceMatrix(tuple(rows))


def _default_labels(prefix: str, count: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(count))


@dataclass(frozen=True)
class Polytope:
    h: HRep
    v: VRep
    m: IncidenceMatrix
    facet_labels: tuple[str, ...]
    vertex_labels: tuple[str, ...]
    name: str = field(default="P", compare=False)

    @classmethod
    def from_pair(
        cls,
        h: HRep,
        v: VRep,
        facet_labels: Sequence[str] | None = None,
        vertex_labels: Sequence[str] | None = None,
        name: str = "P",
    ) -> "Polytope":
        facet_labels = tuple(facet_labels) if facet_labels is not None else _default_labels("f", h.n)
        vertex_labels = tuple(vertex_labels) if vertex_labels is not None else _default_labels("v", v.m)
        if len(facet_labels) != h.n or len(vertex_labels) != v.m:
            raise PolytopeError("label count does not match the representation")
        if len(set(facet_labels)) != h.n or len(set(vertex_labels)) != v.m:
            raise PolytopeError("labels must be unique")
        return cls(h, v, incidence(h, v), facet_labels, vertex_labels, name)

    @classmethod
    def from_h(cls, h: HRep, facet_labels=None, vertex_labels=None, name: str = "P") -> "Polytope":
        from .enumeration import vertices_from_h

        return cls.from_pair(h, vertices_from_h(h), facet_labels, vertex_labels, name)

    @classmethod
    def from_v(cls, v: VRep, facet_labels=None, vertex_labels=None, name: str = "P") -> "Polytope":
        from .enumeration import facets_from_v

        return cls.from_pair(facets_from_v(v), v, facet_labels, vertex_labels, name)

    @property
    def d(self) -> int:
        return self.h.d

    @property
    def n(self) -> int:
        return self.h.n

    @property
    def num_vertices(self) -> int:
        return self.v.m

    def facet_index(self, key: str | int) -> int:
        return _resolve(key, self.facet_labels, "facet")

    def vertex_index(self, key: str | int) -> int:
        return _resolve(key, self.vertex_labels, "vertex")

    @cached_property
    def vertex_masks(self) -> tuple[int, ...]:
        return self.m.vertex_masks

    def vertex_facets(self, j: int) -> frozenset[int]:
        mask = self.vertex_masks[j]
        return frozenset(i for i in range(self.n) if mask >> i & 1)

    def facet_vertices(self, i: int) -> frozenset[int]:
        return frozenset(j for j, bit in enumerate(self.m.rows[i]) if bit)

    def point(self, j: int) -> Vector:
        """Coordinates of vertex j without the homogenizing 1."""
        return self.v.verts[j][1:]

    def is_simple_vertex(self, j: int) -> bool:
        return self.vertex_masks[j].bit_count() == self.d

    def renamed(self, name: str) -> "Polytope":
        return Polytope(self.h, self.v, self.m, self.facet_labels, self.vertex_labels, name)


def _resolve(key: str | int, labels: Sequence[str], kind: str) -> int:
    if isinstance(key, str):
        if key in labels:
            return labels.index(key)
        try:
            key = int(key)
        except ValueError:
            raise KeyError(f"unknown {kind} label {key!r}") from None
    if not 0 <= key < len(labels):
        raise IndexError(f"{kind} index {key} out of range (0..{len(labels) - 1})")
    return key


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(p: Polytope) -> ValidationReport:
    """Check every Polytope invariant; violations are collected, not raised."""
    report = ValidationReport()
    d = p.d
    if p.v.d != d:
        report.violations.append(f"dimension mismatch: H has d={d}, V has d={p.v.d}")
        return report
    seen = set()
    for i, r in enumerate(p.h.normals):
        if r in seen:
            report.violations.append(f"redundant facet: row {i} ({p.facet_labels[i]}) duplicates an earlier row")
        seen.add(r)
    seen = set()
    for j, c in enumerate(p.v.verts):
        if c in seen:
            report.violations.append(f"redundant vertex: column {j} ({p.vertex_labels[j]}) duplicates an earlier column")
        seen.add(c)
    try:
        m = incidence(p.h, p.v)
    except InvalidPairError as exc:
        report.violations.append(f"inconsistent pair: {exc}")
        return report
    if m != p.m:
        report.violations.append("stored incidence matrix differs from IsZero(H^T V)")
    report.notes.append("origin interior: every facet row evaluates to -1 at the origin")

    if affine_dim(p.v.verts) != d:
        report.violations.append("not full-dimensional: vertices span a proper affine subspace")
        return report
    for j in range(p.num_vertices):
        rows = [p.h.normals[i] for i in range(p.n) if m.rows[i][j]]
        if len(rows) < d:
            report.violations.append(f"vertex {p.vertex_labels[j]} lies on fewer than d={d} facets")
        elif rank(rows) != d:
            report.violations.append(f"redundant vertex: {p.vertex_labels[j]} is not an extreme point")
    for i in range(p.n):
        cols = [p.v.verts[j] for j in range(p.num_vertices) if m.rows[i][j]]
        if len(cols) < d:
            report.violations.append(f"redundant facet: {p.facet_labels[i]} contains fewer than d={d} vertices")
        elif affine_dim(cols) != d - 1:
            report.violations.append(f"redundant facet: {p.facet_labels[i]} does not support a facet")
    return report


def polar_dual(p: Polytope) -> Polytope:
    """Polar polytope; the incidence matrix of the result is ``M(p)^T``."""
    h = HRep(p.d, tuple((Fraction(-1),) + c[1:] for c in p.v.verts))
    v = VRep(p.d, tuple((Fraction(1),) + r[1:] for r in p.h.normals))
    dual = Polytope.from_pair(h, v, p.vertex_labels, p.facet_labels, name=f"{p.name}*")
    assert dual.m == p.m.transpose()
    return dual


def facet_vertex_count(p: Polytope, f: str | int) -> int:
    return sum(p.m.rows[p.facet_index(f)])


def _incidence_graph(m: IncidenceMatrix) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from((("f", i) for i in range(m.n)), side=0)
    g.add_nodes_from((("v", j) for j in range(m.m)), side=1)
    g.add_edges_from((("f", i), ("v", j)) for i, r in enumerate(m.rows) for j, bit in enumerate(r) if bit)
    return g


def incidence_isomorphic(a: IncidenceMatrix | Polytope, b: IncidenceMatrix | Polytope) -> bool:
    """True iff the matrices agree after some row and column permutation."""
    ma = a.m if isinstance(a, Polytope) else a
    mb = b.m if isinstance(b, Polytope) else b
    if (ma.n, ma.m) != (mb.n, mb.m):
        return False
    if sorted(map(sum, ma.rows)) != sorted(map(sum, mb.rows)):
        return False
    matcher = isomorphism.GraphMatcher(
        _incidence_graph(ma),
        _incidence_graph(mb),
        node_match=lambda x, y: x["side"] == y["side"],
    )
    return matcher.is_isomorphic()
