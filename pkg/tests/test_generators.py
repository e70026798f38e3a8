import itertools
from fractions import Fraction as Fr

import pytest

from cubicvis.errors import HeightCapExceeded, InvalidM, SingularCurve, TorsionCollision
from cubicvis.generators import (
    GeneratorSpec,
    ec_add,
    gen_cubic_power,
    gen_elliptic_coset,
    gen_grid,
    gen_one_blocker,
    gen_random_general,
    plant_outliers,
)
from cubicvis.geometry import Point, enumerate_lines, max_collinear, orient, strictly_between
from cubicvis.visibility import max_visible_clique, visibility_graph


def test_one_blocker_small():
    A = gen_one_blocker(4)
    assert set(A.points) == {
        Point(0, 1),
        Point(0, -1),
        Point(Fr(-3, 5), Fr(4, 5)),
        Point(Fr(3, 5), Fr(-4, 5)),
        Point(0, 0),
    }
    assert A[len(A) - 1] == Point(0, 0)
    assert all(p.x**2 + p.y**2 == 1 for p in A.points[:-1])


@pytest.mark.parametrize("m", [0, 3, -2, 5])
def test_one_blocker_rejects_bad_m(m):
    with pytest.raises(InvalidM):
        gen_one_blocker(m)


def test_one_blocker_pair_invisible():
    A = gen_one_blocker(2)
    G = visibility_graph(A)
    assert not G.adjacent(0, 1)
    assert G.witness[(0, 1)] == 2


def test_cubic_power_counts():
    assert enumerate_lines(gen_cubic_power(2)).t3 == 2
    assert enumerate_lines(gen_cubic_power(1)).t3 == 1
    for m in range(2, 8):
        assert max_collinear(gen_cubic_power(m)) == 3


def test_elliptic_doubling():
    A = gen_elliptic_coset(0, -2, (3, 5), 2)
    assert A[1] == Point(Fr(129, 100), Fr(-383, 1000))
    assert len(gen_elliptic_coset(0, -2, (3, 5), 1)) == 1


def test_elliptic_errors():
    with pytest.raises(TorsionCollision):
        gen_elliptic_coset(-1, 0, (0, 0), 2)
    with pytest.raises(SingularCurve):
        gen_elliptic_coset(0, 0, (1, 1), 2)
    with pytest.raises(HeightCapExceeded):
        gen_elliptic_coset(0, -2, (3, 5), 51)


def test_elliptic_collinearity_is_group_law():
    # iP, jP, kP collinear exactly when i + j + k = 0, which never happens for positive
    # multiples; so no three points collinear, and sums of two points match chords
    n = 6
    A = gen_elliptic_coset(0, -2, (3, 5), n)
    for p in A:
        assert p.y**2 == p.x**3 - 2
    for a, b, c in itertools.combinations(range(n), 3):
        assert orient(A[a], A[b], A[c]) != 0
    P = (A[0].x, A[0].y)
    for i in range(n - 1):
        # the chord through (i+1)P and P meets the curve again at -(i+2)P
        s = ec_add(0, (A[i].x, A[i].y), P)
        assert Point(*s) == A[i + 1]
        neg = Point(s[0], -s[1])
        if A[i] != A[0]:
            assert orient(A[i], A[0], neg) == 0


def test_random_general_is_deterministic_and_general():
    A = gen_random_general(10, 100, 5)
    assert A == gen_random_general(10, 100, 5)
    assert max_collinear(A) == 2
    G = visibility_graph(A)
    assert G.edge_count() == 45


def test_grid():
    A = gen_grid(3, 3)
    assert max_collinear(A) == 3
    assert len(enumerate_lines(A).rich_lines) == 8


def test_generator_spec_and_outliers():
    A = GeneratorSpec("cubic-power", {"m": 5}).build()
    B = plant_outliers(A, 3, seed=1, avoid=lambda p: p.y == p.x**3)
    assert len(B) == len(A) + 3
    assert max_collinear(B) <= 3
    assert sum(p.y != p.x**3 for p in B) == 3
    with pytest.raises(ValueError):
        GeneratorSpec("nope", {}).build()


@pytest.mark.parametrize("m", [2, 6, 10])
def test_one_blocker_structure(m):
    A = gen_one_blocker(m)
    G = visibility_graph(A)
    blocked = [(i, j) for (i, j) in G.witness if j < m]
    assert sorted(v for e in blocked for v in e) == list(range(m))
    assert all(strictly_between(A[i], A[j], Point(0, 0)) for i, j in blocked)
    assert len(max_visible_clique(G, within=range(m))) == m // 2
    assert max_collinear(A) <= 3
