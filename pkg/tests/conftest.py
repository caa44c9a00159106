import itertools
from fractions import Fraction

import pytest

from polywedge import fixtures
from polywedge.exact import inverse, rank


def brute_force_vertices(rows):
    """Vertices by solving every d-subset of facet equations (independent of DD)."""
    d = len(rows[0]) - 1
    found = set()
    for subset in itertools.combinations(rows, d):
        a = [r[1:] for r in subset]
        if rank(a) < d:
            continue
        inv = inverse(a)
        # row [-1, h] tight means h . x = 1
        x = tuple(sum(inv[i][k] for k in range(d)) for i in range(d))
        point = (Fraction(1),) + x
        if all(sum(a_ * b for a_, b in zip(r, point)) <= 0 for r in rows):
            found.add(x)
    return found


@pytest.fixture
def cube3():
    return fixtures.cube(3)


@pytest.fixture
def pyramid():
    return fixtures.square_pyramid()


@pytest.fixture
def lemma2():
    return fixtures.lemma2_fixture()

