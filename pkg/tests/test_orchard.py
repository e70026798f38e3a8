import math
import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicvis.generators import gen_cubic_power, gen_grid, gen_one_blocker, gen_random_general
from cubicvis.geometry import Point, PointSet, enumerate_lines
from cubicvis.orchard import orchard_constants, orchard_core, triple_stats, verify_orchard_guarantees


def test_triple_stats_examples():
    H = triple_stats(gen_cubic_power(2))
    assert H.T == 2
    assert H.degree[2] == 2 and H.degree[3] == 1  # t = 0 and t = 1
    assert triple_stats(gen_random_general(8, 50, 0)).T == 0
    line = PointSet(tuple(Point(t, 2 * t) for t in range(5)))
    assert triple_stats(line).T == 10


def test_constants():
    delta, D = orchard_constants(4, 4)
    assert delta == Fr(1, 36) and D == 1
    assert orchard_constants(6, 2) == (Fr(1, 12), 6)


def test_no_triples_prunes_everything():
    core = orchard_core(gen_random_general(10, 50, 1), 4, 4)
    assert core.survivors == []
    assert core.deletion_order == list(range(10))


def brute_rich_counts(A: PointSet, survivors):
    sub = A.subset(survivors)
    stats = enumerate_lines(sub) if len(sub) >= 2 else None
    counts = {p: 0 for p in survivors}
    if stats is None:
        return counts
    for members in stats.rich_lines.values():
        for m in members:
            counts[survivors[m]] += 1
    return counts


def brute_degrees(A: PointSet, survivors):
    sub = A.subset(survivors)
    deg = {p: 0 for p in survivors}
    if len(sub) < 2:
        return deg
    for members in enumerate_lines(sub).rich_lines.values():
        for m in members:
            deg[survivors[m]] += math.comb(len(members) - 1, 2)
    return deg


def test_cubic_power_core():
    A = gen_cubic_power(50).subset(range(100))
    core = orchard_core(A, 4, 4)
    assert core.delta == Fr(1, 36)
    assert core.rich_count == brute_rich_counts(A, core.survivors)
    assert core.degree == brute_degrees(A, core.survivors)
    assert all(d >= core.threshold for d in core.degree.values())
    core = verify_orchard_guarantees(core, A, 4, 4, clique_budget=100_000)
    assert core.status == "NotApplicable"  # large visible cliques on the cubic


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(4, 25))
def test_pruning_invariants(seed, n):
    r = random.Random(seed)
    pts = set()
    while len(pts) < n:
        pts.add(Point(r.randint(0, 4), r.randint(0, 4)))
    A = PointSet(tuple(sorted(pts)))
    core = orchard_core(A, 6, 4)
    assert core.degree == brute_degrees(A, core.survivors)
    assert core.rich_count == brute_rich_counts(A, core.survivors)
    assert all(d >= core.threshold for d in core.degree.values())
    assert orchard_core(A, 6, 4).survivors == core.survivors


def test_visible_clique_makes_guarantee_inapplicable():
    A = gen_one_blocker(10)
    core = verify_orchard_guarantees(orchard_core(A, 4, 4), A, 4, 4)
    assert core.status == "NotApplicable"


def test_small_n_inapplicable():
    A = gen_grid(2, 2)
    core = verify_orchard_guarantees(orchard_core(A, 4, 4), A, 4, 4)
    assert core.status == "NotApplicable" and not core.checks["size_ok"]


def qualifying_instances():
    """Grids and grid subsets; in a full grid any 5 points include two with a lattice midpoint."""
    out = []
    r = random.Random(0)
    for w, h in [(4, 4), (5, 5), (4, 6), (6, 6), (5, 7)]:
        out.append(gen_grid(w, h))
        for _ in range(3):
            G = gen_grid(w, h)
            keep = sorted(r.sample(range(len(G)), max(12, len(G) - r.randint(0, 6))))
            out.append(G.subset(keep))
    return out


def test_some_instances_qualify():
    count = 0
    for A in qualifying_instances()[::4]:
        k = max(4, max(enumerate_lines(A).histogram) + 1)
        count += verify_orchard_guarantees(orchard_core(A, k, 5), A, k, 5).status == "Applicable"
    assert count >= 3


@pytest.mark.parametrize("idx", range(20))
def test_guarantees_hold_when_applicable(idx):
    A = qualifying_instances()[idx]
    k = max(4, max(enumerate_lines(A).histogram) + 1)
    for l in (5, 6):
        core = verify_orchard_guarantees(orchard_core(A, k, l), A, k, l)
        assert core.status != "Violated"
        if core.status == "Applicable":
            n = len(A)
            assert len(core.survivors) >= Fr(n, 8 * (l - 1) * core.D_k)
            assert all(c >= Fr(n, 24 * (l - 1) * core.D_k) for c in core.rich_count.values())
