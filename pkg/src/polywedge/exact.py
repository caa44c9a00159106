"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction` (always normalized, denominator > 0).
Ranks are computed by fraction-free (Bareiss) elimination over the integers
after clearing denominators row by row.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Rational = Fraction

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?")


def parse_rational(text: str) -> Fraction:
    """Parse ``[sign]int[/posint]``; anything else raises ValueError."""
    if not _RATIONAL_RE.fullmatch(text):
        raise ValueError(f"malformed rational {text!r}")
    if "/" in text and int(text.split("/")[1]) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(text)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def as_vector(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in values)


def dot(a: Sequence, b: Sequence) -> Fraction:
    total = Fraction(0)
    for x, y in zip(a, b):
        if x and y:
            total += x * y
    return total


def integer_row(row: Sequence) -> list[int]:
    """Positive multiple of ``row`` with integer entries (denominators cleared)."""
    fr = [Fraction(x) for x in row]
    den = lcm(*(x.denominator for x in fr)) if fr else 1
    return [int(x * den) for x in fr]


def primitive(vec: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries (sign kept)."""
    g = 0
    for x in vec:
        g = gcd(g, x)
    if g <= 1:
        return tuple(vec)
    return tuple(x // g for x in vec)


@dataclass(frozen=True)
class RatMatrix:
    """Dense immutable matrix of rationals, stored row-major."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry grid does not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: int | None = None) -> "RatMatrix":
        grid = tuple(as_vector(r) for r in rows)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        return cls(len(grid), cols, grid)

    @classmethod
    def from_columns(cls, columns: Iterable[Iterable], rows: int | None = None) -> "RatMatrix":
        cols = [as_vector(c) for c in columns]
        if rows is None:
            rows = len(cols[0]) if cols else 0
        return cls.from_rows(zip(*cols), cols=len(cols)) if cols else cls(rows, 0, ((),) * rows)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else ())

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.entries)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = [other.column(j) for j in range(other.cols)]
        return RatMatrix(
            self.rows,
            other.cols,
            tuple(tuple(dot(r, c) for c in cols) for r in self.entries),
        )

    def rank(self) -> int:
        return rank(self)


def _grid(m) -> list[list[int]]:
    rows = m.entries if isinstance(m, RatMatrix) else m
    return [integer_row(r) for r in rows]


def rank(m: RatMatrix | Sequence[Sequence]) -> int:
    """Exact rank over the rationals (Bareiss elimination on cleared rows)."""
    a = _grid(m)
    if not a:
        return 0
    nr, nc = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(nc):
        piv = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, nr):
            q = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c + 1, nc):
                row_i[j] = (p * row_i[j] - q * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        r += 1
        if r == nr:
            break
    return r


def affine_dim(points: Sequence[Sequence]) -> int:
    """Affine dimension of homogenized points ``[1; x]``; -1 for no points."""
    pts = list(points)
    if not pts:
        return -1
    for p in pts:
        if Fraction(p[0]) != 1:
            raise ValueError(f"homogenized point must start with 1, got {p[0]}")
    return rank(pts) - 1


def inverse(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse of a square rational matrix."""
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [r[n:] for r in a]
