from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polywedge.exact import RatMatrix, affine_dim, format_rational, inverse, parse_rational, rank


def naive_rank(rows):
    """Textbook Gaussian elimination over Fractions (independent of Bareiss)."""
    a = [[Fraction(x) for x in r] for r in rows]
    r = 0
    for c in range(len(a[0]) if a else 0):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    nr = draw(st.integers(1, max_rows))
    nc = draw(st.integers(1, max_cols))
    # small support so rank deficiency happens often
    entry = st.one_of(st.just(Fraction(0)), fractions)
    return [[draw(entry) for _ in range(nc)] for _ in range(nr)]


def test_rank_identity():
    assert rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3


def test_rank_zero():
    assert rank([[0, 0, 0], [0, 0, 0]]) == 0


def test_rank_cube_normals():
    rows = []
    for i in range(3):
        for s in (1, -1):
            r = [-1, 0, 0, 0]
            r[i + 1] = s
            rows.append(r)
    assert naive_rank(rows) == 4
    assert rank(rows) == 4


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_rank_matches_naive_elimination(m):
    assert rank(m) == naive_rank(m)


@settings(max_examples=100, deadline=None)
@given(matrices(), st.randoms(use_true_random=False))
def test_rank_invariant_under_permutation_and_transpose(m, rnd):
    r = rank(m)
    rows = list(m)
    rnd.shuffle(rows)
    cols = list(range(len(m[0])))
    rnd.shuffle(cols)
    permuted = [[row[c] for c in cols] for row in rows]
    assert rank(permuted) == r
    assert rank([list(c) for c in zip(*m)]) == r
    assert r <= min(len(m), len(m[0]))


@given(fractions, fractions, fractions)
def test_rational_round_trip(a, b, c):
    assert (a + b) - b == a
    assert (a * c) / c == a if c else True


def test_affine_dim_examples():
    assert affine_dim([]) == -1
    assert affine_dim([(1, 0, 0), (1, 2, 3)]) == 1
    square = [(1, 1, y, z) for y in (-1, 1) for z in (-1, 1)]
    assert affine_dim(square) == 2


def test_affine_dim_rejects_unhomogenized():
    with pytest.raises(ValueError):
        affine_dim([(2, 0, 0)])


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 4))
def test_affine_dim_of_independent_points(k):
    pts = [(1,) + tuple(int(i == j) for i in range(4)) for j in range(k)] + [(1, 0, 0, 0, 0)]
    assert affine_dim(pts) == k


@pytest.mark.parametrize("text,value", [("-3/7", Fraction(-3, 7)), ("5", Fraction(5)), ("+4/6", Fraction(2, 3))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1.5", "3/0", "3/-4", "", "a", "1 /2", "--1"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


@given(fractions)
def test_format_parse_round_trip(x):
    assert parse_rational(format_rational(x)) == x


def test_ratmatrix_ops():
    a = RatMatrix.from_rows([[1, 2], [3, 4]])
    inv = RatMatrix.from_rows(inverse(a.entries))
    assert (a @ inv).entries == ((1, 0), (0, 1))
    assert a.transpose().entries == ((1, 3), (2, 4))
    assert a.rank() == 2
    with pytest.raises(ValueError):
        RatMatrix(2, 2, ((Fraction(1),),))
