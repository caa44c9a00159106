"""Exact vertex/facet enumeration by the double description method.

The polytope ``{x : a_i . [1; x] <= 0}`` is homogenized to the cone
``{(t, x) : t >= 0, a_i . (t, x) <= 0}``.  Its extreme rays with ``t > 0``
are the vertices; a ray with ``t = 0`` means the region is unbounded.
Rays are kept as primitive integer vectors, and ray pairs are combined
only when they pass the combinatorial adjacency test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import HRep, NotCanonicalError, NotFullDimensionalError, PolytopeError, VRep
from .exact import affine_dim, integer_row, inverse, primitive, rank


class UnboundedError(PolytopeError):
    pass


class InfeasibleError(PolytopeError):
    pass


@dataclass
class DDPair:
    """Double description state: constraints processed so far and the rays.

    ``zero_sets[k]`` is the bitmask of processed constraints tight at ray k.
    """

    constraints: list[tuple[int, ...]]
    processed: list[int] = field(default_factory=list)
    rays: list[tuple[int, ...]] = field(default_factory=list)
    zero_sets: list[int] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.constraints[0])

    def start(self) -> None:
        basis: list[int] = []
        for i, row in enumerate(self.constraints):
            if rank([self.constraints[k] for k in basis] + [row]) > len(basis):
                basis.append(i)
                if len(basis) == self.dim:
                    break
        if len(basis) < self.dim:
            raise UnboundedError("unbounded: the constraint system has a nontrivial lineality space")
        inv = inverse([self.constraints[k] for k in basis])
        self.processed = list(basis)
        self.rays = []
        self.zero_sets = []
        full = sum(1 << k for k in basis)
        for j, k in enumerate(basis):
            col = [-inv[r][j] for r in range(self.dim)]
            self.rays.append(primitive(integer_row(col)))
            self.zero_sets.append(full & ~(1 << k))

    def cut_count(self, i: int) -> int:
        row = self.constraints[i]
        return sum(1 for r in self.rays if _idot(row, r) > 0)

    def add(self, i: int) -> None:
        row = self.constraints[i]
        bit = 1 << i
        values = [_idot(row, r) for r in self.rays]
        pos = [k for k, s in enumerate(values) if s > 0]
        neg = [k for k, s in enumerate(values) if s < 0]
        rays: list[tuple[int, ...]] = []
        zero_sets: list[int] = []
        for k, s in enumerate(values):
            if s <= 0:
                rays.append(self.rays[k])
                zero_sets.append(self.zero_sets[k] | bit if s == 0 else self.zero_sets[k])
        need = self.dim - 2
        for p in pos:
            zp = self.zero_sets[p]
            for q in neg:
                common = zp & self.zero_sets[q]
                if common.bit_count() < need:
                    continue
                if any(
                    k != p and k != q and z & common == common
                    for k, z in enumerate(self.zero_sets)
                ):
                    continue
                sp, sq = values[p], values[q]
                combo = [sp * b - sq * a for a, b in zip(self.rays[p], self.rays[q])]
                rays.append(primitive(combo))
                zero_sets.append(common | bit)
        self.rays = rays
        self.zero_sets = zero_sets
        self.processed.append(i)

    def run(self) -> None:
        self.start()
        remaining = [i for i in range(len(self.constraints)) if i not in self.processed]
        while remaining:
            # fewest cut-off rays first keeps intermediate ray counts small
            best = min(remaining, key=lambda i: (self.cut_count(i), i))
            remaining.remove(best)
            self.add(best)


def _idot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def vertices_from_inequalities(rows: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """Vertices (un-homogenized, lexicographic) of ``{x : row . [1; x] <= 0}``.

    Rows need not be canonical, so this also serves inputs whose origin is
    not interior.
    """
    if not rows:
        raise UnboundedError("unbounded: no constraints")
    dim = len(rows[0])
    cone_rows = [tuple(integer_row(r)) for r in rows]
    cone_rows.append((-1,) + (0,) * (dim - 1))
    dd = DDPair(cone_rows)
    dd.run()
    points = set()
    recession = False
    for r in dd.rays:
        if r[0] > 0:
            points.add(tuple(Fraction(x, r[0]) for x in r[1:]))
        elif r[0] == 0:
            recession = True
    if not points:
        raise InfeasibleError("infeasible: no point satisfies every constraint")
    if recession:
        raise UnboundedError("unbounded: the region has a nonzero recession direction")
    return sorted(points)


def vertices_from_h(h: HRep) -> VRep:
    """Complete irredundant vertex set of a canonical H-representation."""
    points = vertices_from_inequalities(h.normals)
    v = VRep(h.d, tuple((Fraction(1),) + p for p in points))
    if affine_dim(v.verts) != h.d:
        raise InfeasibleError("infeasible/degenerate: the region is not full-dimensional")
    return v


def facets_from_v(v: VRep) -> HRep:
    """Irredundant canonical facets of the convex hull of ``v``."""
    if not v.verts or affine_dim(v.verts) != v.d:
        raise NotFullDimensionalError("not full-dimensional: points span a proper affine subspace")
    polar = HRep(v.d, tuple((Fraction(-1),) + c[1:] for c in v.verts))
    try:
        normals = vertices_from_inequalities(polar.normals)
    except UnboundedError:
        raise NotCanonicalError(
            "origin is not interior to the convex hull",
            suggested_translation=_barycenter_shift(v.verts),
        ) from None
    return HRep(v.d, tuple((Fraction(-1),) + h for h in normals))


def _barycenter_shift(cols: Sequence[Sequence[Fraction]]) -> tuple[Fraction, ...]:
    m = len(cols)
    return tuple(-sum(c[k] for c in cols) / m for k in range(1, len(cols[0])))


def suggest_translation(rows: Sequence[Sequence]) -> tuple[Fraction, ...]:
    """Translation that moves the vertex barycenter of a general H system to 0."""
    points = vertices_from_inequalities(rows)
    return _barycenter_shift([(Fraction(1),) + p for p in points])


def remove_redundant(h: HRep) -> HRep:
    """Drop duplicate rows and rows that do not support a facet."""
    verts = vertices_from_h(h).verts
    kept = []
    seen = set()
    for row in h.normals:
        if row in seen:
            continue
        seen.add(row)
        on = [c for c in verts if sum(a * b for a, b in zip(row, c)) == 0]
        if len(on) >= h.d and affine_dim(on) == h.d - 1:
            kept.append(row)
    return HRep(h.d, tuple(kept))
