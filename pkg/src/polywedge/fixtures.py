"""Small exact polytopes used by the tests, the acceptance suite and the CLI."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .core import HRep, Polytope, VRep
from .enumeration import UnboundedError, vertices_from_h


def _signs(bits: tuple[int, ...]) -> str:
    return "".join("+" if b > 0 else "-" for b in bits)


def cube(d: int = 3) -> Polytope:
    """[-1, 1]^d with facets ``x<i>+`` / ``x<i>-``."""
    rows, flabels = [], []
    for i in range(d):
        for s in (1, -1):
            r = [Fraction(0)] * (d + 1)
            r[0], r[i + 1] = Fraction(-1), Fraction(s)
            rows.append(tuple(r))
            flabels.append(f"x{i + 1}{'+' if s > 0 else '-'}")
    pts = sorted(itertools.product((-1, 1), repeat=d))
    v = VRep.from_points(pts)
    return Polytope.from_pair(HRep(d, tuple(rows)), v, flabels, [f"v{_signs(p)}" for p in pts], name=f"cube{d}")


def simplex(d: int) -> Polytope:
    """conv(e_1, ..., e_d, -(1, ..., 1)); facet ``F<j>`` is opposite ``v<j>``."""
    pts = [tuple(Fraction(int(i == k)) for i in range(d)) for k in range(d)]
    pts.append(tuple(Fraction(-1) for _ in range(d)))
    v = VRep.from_points(pts)
    rows = []
    for j in range(d + 1):
        others = [p for k, p in enumerate(pts) if k != j]
        rows.append(_hyperplane_through(others))
    return Polytope.from_pair(
        HRep(d, tuple(rows)), v, [f"F{j}" for j in range(d + 1)], [f"v{j}" for j in range(d + 1)], name=f"simplex{d}",
    )


def _hyperplane_through(points) -> tuple[Fraction, ...]:
    """Canonical row [-1, h] with h . p = 1 for d affinely independent points."""
    from .exact import inverse

    inv = inverse([list(p) for p in points])
    h = [sum(inv[r][c] for c in range(len(points))) for r in range(len(points))]
    return (Fraction(-1),) + tuple(h)


def triangle() -> Polytope:
    return simplex(2).renamed("triangle")


def square_pyramid() -> Polytope:
    """Base z = -1 over [-1, 1]^2 (facet ``F``), apex ``y`` at (0, 0, 1).

    Triangles: G1 (x = 1 side), G2 (y = 1), G3 (x = -1), G4 (y = -1).
    """
    rows = [
        (-1, 0, 0, -1),
        (-1, 2, 0, 1),
        (-1, 0, 2, 1),
        (-1, -2, 0, 1),
        (-1, 0, -2, 1),
    ]
    pts = [(1, 1, -1), (-1, 1, -1), (-1, -1, -1), (1, -1, -1), (0, 0, 1)]
    return Polytope.from_pair(
        HRep(3, tuple(rows)), VRep.from_points(pts),
        ["F", "G1", "G2", "G3", "G4"], ["a", "b", "c", "d", "y"], name="pyramid",
    )


def pentagon() -> Polytope:
    pts = [(2, 0), (1, 2), (-2, 1), (-2, -1), (1, -2)]
    return Polytope.from_v(VRep.from_points(pts), vertex_labels=list("pqrst"), name="pentagon")


def product(p: Polytope, q: Polytope, name: str | None = None) -> Polytope:
    """Cartesian product p x q (simple when both factors are)."""
    zp, zq = (Fraction(0),) * p.d, (Fraction(0),) * q.d
    rows = [r + zq for r in p.h.normals] + [(Fraction(-1),) + zp + r[1:] for r in q.h.normals]
    cols, vlabels = [], []
    for j, a in enumerate(p.v.verts):
        for k, b in enumerate(q.v.verts):
            cols.append(a + b[1:])
            vlabels.append(f"{p.vertex_labels[j]}.{q.vertex_labels[k]}")
    flabels = [f"{x}.L" for x in p.facet_labels] + [f"{x}.R" for x in q.facet_labels]
    d = p.d + q.d
    return Polytope.from_pair(HRep(d, tuple(rows)), VRep(d, tuple(cols)), flabels, vlabels, name=name or f"{p.name}x{q.name}")


def segment() -> Polytope:
    return Polytope.from_pair(HRep(1, ((-1, 1), (-1, -1))), VRep.from_points([(1,), (-1,)]), ["s+", "s-"], ["p", "m"], name="segment")


def prism(p: Polytope) -> Polytope:
    return product(p, segment(), name=f"prism({p.name})")


def lemma2_fixture():
    """Wedge of the square pyramid over its base, with the Lemma-2 roles.

    Returns (P4, foot, g, y, w): foot = T, g = G1 (contains the nonsimple
    vertical edge [y_b, y^t]), y = y_b, w = y^t.
    """
    from .constructions import wedge

    p4 = wedge(square_pyramid(), "F").w.renamed("P4")
    return p4, "T", "G1", "y_b", "y^t"


def simple_corpus() -> list[Polytope]:
    """Simple polytopes with d <= 4 and n <= 10."""
    from .constructions import wedge

    return [
        simplex(2), simplex(3), simplex(4), pentagon(), cube(3), cube(4),
        prism(simplex(2)), prism(pentagon()), product(simplex(2), simplex(2)),
        prism(simplex(3)), wedge(cube(3), "x1+").w.renamed("wedge(cube3)"),
    ]


def random_hrep(rng: random.Random, d: int, n: int, spread: int = 4) -> HRep:
    """Bounded random canonical system: a simplex's rows plus random extras.

    Some extras are deliberately redundant (duplicates or slack).
    """
    base = simplex(d).h.normals
    rows = list(base)
    while len(rows) < n:
        roll = rng.random()
        if roll < 0.15:
            rows.append(rng.choice(rows))
        elif roll < 0.3:
            # shrunken copy of an existing normal: a parallel slack halfspace
            src = rng.choice(rows)
            rows.append((Fraction(-1),) + tuple(x / 3 for x in src[1:]))
        else:
            h = tuple(Fraction(rng.randint(-spread, spread), rng.randint(1, 3)) for _ in range(d))
            if any(h):
                rows.append((Fraction(-1),) + h)
    rng.shuffle(rows)
    h = HRep(d, tuple(rows))
    vertices_from_h(h)  # raises UnboundedError if ever unbounded
    return h


__all__ = [
    "cube", "simplex", "triangle", "square_pyramid", "pentagon", "product", "segment", "prism",
    "lemma2_fixture", "simple_corpus", "random_hrep", "UnboundedError",
]
