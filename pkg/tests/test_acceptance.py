"""Acceptance criteria 1-10, each printing one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline; they
are also echoed to the terminal summary through capsys.disabled().
"""

import itertools
import json
import math
import random
import time
from collections import Counter
from fractions import Fraction as Fr
from pathlib import Path

import pytest

from cubicvis import cli
from cubicvis.container import bound_formula, fit_cubic
from cubicvis.cubic import X_, Y_, Z_, alg_float, exceptional_set, hessian, named_cubic
from cubicvis.generators import gen_cubic_power, gen_grid, gen_one_blocker, gen_random_general, plant_outliers
from cubicvis.geometry import Point, PointSet, max_collinear, strictly_between
from cubicvis.orchard import orchard_core, verify_orchard_guarantees
from cubicvis.patches import certify_patch_chord, decompose, random_patch_point
from cubicvis.visibility import (
    blocker_colouring_cover,
    is_visible,
    max_clique_bruteforce,
    max_visible_clique,
    recertify_cover,
    visibility_graph,
    visibility_graph_bruteforce,
)

X, Y, Z = X_, Y_, Z_
SUITE = Path(__file__).resolve().parent.parent / "suite"


def criterion(capsys, number, title, body, limit=None):
    t0 = time.perf_counter()
    err = None
    detail = ""
    try:
        detail = body() or ""
    except AssertionError as e:
        err = e
    elapsed = time.perf_counter() - t0
    if err is None and limit is not None and elapsed >= limit:
        err = AssertionError(f"took {elapsed:.1f}s, limit {limit}s")
    status = "PASS" if err is None else "FAIL"
    with capsys.disabled():
        print(f"\ncriterion {number:>2} {status}  {title}  [{elapsed:.2f}s] {detail if err is None else err}")
    if err is not None:
        raise err


# 1 ------------------------------------------------------------------------


def test_criterion_01_weierstrass_exceptional_set(capsys):
    def body():
        F = named_cubic("weierstrass")
        E = exceptional_set(F, "standard")
        assert sorted((p.x, p.y) for p in E.e_vt) == [(-1, 0), (0, 0), (1, 0)]
        affine_fl = [p for p in E.e_fl if not p.at_infinity]
        assert len(affine_fl) == 2
        assert all(1.46 < alg_float(p.x) < 1.47 for p in affine_fl)
        assert len(E.e_inf) == 1 and not E.e_sing
        D = decompose(F, E)
        assert D.patch_count == 6
        return f"flex x ~ {alg_float(affine_fl[0].x):.5f}, 6 patches"

    criterion(capsys, 1, "Weierstrass exceptional set and patches", body, limit=5)


# 2 ------------------------------------------------------------------------


def test_criterion_02_hessians(capsys):
    def body():
        assert hessian(X**3 - Y * Y * Z) == X * Y * Y * (-24)
        assert hessian(Y * Y * Z - X * X * (X + Z)) == (X * Y * Y * 3 + Y * Y * Z - X * X * Z) * 8
        E = exceptional_set(named_cubic("crunodal"), "standard")
        xs = {p.x for p in E.e_fl if not p.at_infinity}
        assert xs == {Fr(4, 3)}
        return "unnormalized determinant of second partials"

    criterion(capsys, 2, "Hessian normal forms", body)


# 3 ------------------------------------------------------------------------


def test_criterion_03_one_blocker(capsys):
    def body():
        for m in range(2, 21, 2):
            A = gen_one_blocker(m)
            G = visibility_graph(A)
            X_idx = range(m)
            nonedges = [(i, j) for i, j in itertools.combinations(X_idx, 2) if not G.adjacent(i, j)]
            ends = Counter(v for e in nonedges for v in e)
            assert len(nonedges) == m // 2 and all(ends[v] == 1 for v in X_idx)
            w = len(max_visible_clique(G, within=X_idx))
            assert w == m // 2
            if m <= 16:
                assert max_clique_bruteforce(G, within=X_idx) == w
            cover = blocker_colouring_cover(A, X_idx, G)
            assert len(cover.parts) <= 2 and cover.certified
            assert max_collinear(A) <= 3
        return "m = 2..20"

    criterion(capsys, 3, "one-blocker sharpness", body, limit=10)


# 4 ------------------------------------------------------------------------


def _segment_point(p, q, t):
    return Point(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y))


def blocker_instance(seed):
    """A patch scope (a convex arc, no three collinear) plus ambient blockers on its chords."""
    r = random.Random(seed)
    if seed % 2:
        ts = sorted(r.sample(range(1, 16), r.randint(4, 10)))
        X = [Point(t, t**3) for t in ts]
    else:
        ts = sorted(r.sample(range(1, 20), r.randint(4, 10)))
        X = [Point(Fr(1 - t * t, 1 + t * t), Fr(2 * t, 1 + t * t)) for t in ts]
    pts = list(X)
    for _ in range(r.randint(1, 8)):
        i, j = r.sample(range(len(X)), 2)
        p = _segment_point(X[i], X[j], Fr(r.randint(1, 9), 10))
        if p not in pts:
            pts.append(p)
    return PointSet(tuple(pts)), list(range(len(X)))


def test_criterion_04_blocker_colouring(capsys):
    def body():
        total_b = 0
        for seed in range(100):
            A, X_idx = blocker_instance(seed)
            cover = blocker_colouring_cover(A, X_idx)
            b = cover.b
            total_b += b
            # independent recount of the non-visibility graph on the scope
            H = {v: 0 for v in X_idx}
            for i, j in itertools.combinations(X_idx, 2):
                if not is_visible(A, i, j):
                    H[i] += 1
                    H[j] += 1
            assert max(H.values()) <= b
            for r_ in cover.blockers:
                blocked = [(i, j) for i, j in itertools.combinations(X_idx, 2) if strictly_between(A[i], A[j], A[r_])]
                ends = [v for e in blocked for v in e]
                assert len(ends) == len(set(ends))
            assert len(cover.parts) <= b + 1
            assert recertify_cover(A, cover)
        return f"100 instances, {total_b} blockers in total"

    criterion(capsys, 4, "blocker-colouring covers", body)


# 5 ------------------------------------------------------------------------


def container_run(tmp_path, m, s):
    cfg = {
        "generator": {"kind": "cubic-power", "params": {"m": m}},
        "cubic": "cubic-power",
        "k": 4,
        "outliers": s,
        "seed": 100 + s,
    }
    path = tmp_path / f"container_{m}_{s}.json"
    path.write_text(json.dumps(cfg))
    out = tmp_path / f"report_{m}_{s}.json"
    code = cli.main(["container", "--config", str(path), "--out", str(out), "--quiet"])
    return code, json.loads(out.read_text())


def test_criterion_05_container(capsys, tmp_path):
    def body():
        sizes = []
        for m in (5, 10, 25):
            t0 = time.perf_counter()
            for s in (0, 1, 2, 3):
                code, rep = container_run(tmp_path, m, s)
                assert code == 0, rep["results"]
                res = rep["results"]
                assert res["s"] == s and res["classification"] == "Irreducible"
                assert res["cover_size"] <= 15 * (s + 1) + 13
                n = 2 * m + 1 + s
                assert len(res["realized_clique"]) >= math.ceil(bound_formula(n, s, 4))
                sizes.append(res["cover_size"])
            if m == 25:
                assert time.perf_counter() - t0 < 60
        return f"cover sizes {sizes}"

    criterion(capsys, 5, "cubic-container pipeline", body)


# 6 ------------------------------------------------------------------------


def _int_line(p, q):
    a, b = q[1] - p[1], p[0] - q[0]
    c = -(a * p[0] + b * p[1])
    g = math.gcd(a, b, c)
    a, b, c = a // g, b // g, c // g
    if a < 0 or (a == 0 and b < 0):
        a, b, c = -a, -b, -c
    return a, b, c


def no_four_collinear_set(seed):
    """Random lattice points, rejecting any that would complete a fourth point on a line."""
    r = random.Random(seed)
    n = r.randint(3, 60)
    box = r.choice([6, 8, 12])
    pts: list = []
    on_line: Counter = Counter()
    tries = 0
    while len(pts) < n and tries < 5000:
        tries += 1
        p = (r.randint(-box, box), r.randint(-box, box))
        if p in pts:
            continue
        keys = {_int_line(p, q) for q in pts}
        if any(on_line[key] >= 3 for key in keys):
            continue
        for key in keys:
            on_line[key] = max(on_line[key], 1) + 1  # a fresh line holds q and p
        pts.append(p)
    return PointSet(tuple(Point(x, y) for x, y in pts))


def test_criterion_06_turan(capsys):
    def body():
        from cubicvis.container import turan_identities

        small_clique = 0
        for seed in range(200):
            A = no_four_collinear_set(seed)
            n = len(A)
            assert max_collinear(A) <= 3
            R = turan_identities(A, clique_budget=20_000)
            assert math.comb(n, 2) == R.t2 + 3 * R.t3
            assert R.e == R.t2 + 2 * R.t3
            if R.clique is not None and R.clique < 4:
                small_clique += 1
                assert R.t2 <= n
        return f"200 sets, {small_clique} with clique < 4"

    criterion(capsys, 6, "ordinary-line identities", body)


# 7 ------------------------------------------------------------------------


def orchard_instances():
    r = random.Random(7)
    out = [(gen_cubic_power(50).subset(range(100)), 4, 4)]
    for w, h in [(4, 4), (5, 5), (4, 6), (6, 6), (5, 7), (7, 7)]:
        G = gen_grid(w, h)
        k = max(w, h) + 1
        out.append((G, k, 5))
        for _ in range(4):
            keep = sorted(r.sample(range(len(G)), len(G) - r.randint(1, 5)))
            out.append((G.subset(keep), k, 5))
    for seed in range(5):
        out.append((gen_random_general(20, 30, seed), 4, 4))
    return out


def test_criterion_07_orchard(capsys):
    def body():
        core = orchard_core(gen_grid(3, 3), 4, 4)
        assert core.delta == Fr(1, 36) and core.D_k == 1
        applicable = 0
        for A, k, l in orchard_instances():
            core = orchard_core(A, k, l)
            assert all(d >= core.delta * len(A) / 2 for d in core.degree.values())
            core = verify_orchard_guarantees(core, A, k, l, clique_budget=100_000)
            assert core.status != "Violated", core.checks
            if core.status == "Applicable":
                applicable += 1
                n = len(A)
                assert len(core.survivors) >= Fr(n, 8 * (l - 1) * core.D_k)
                assert all(c >= Fr(n, 24 * (l - 1) * core.D_k) for c in core.rich_count.values())
        assert applicable > 0
        return f"{applicable} instances with verified hypotheses"

    criterion(capsys, 7, "dense-orchard core", body)


# 8 ------------------------------------------------------------------------


def test_criterion_08_chord_oracle(capsys):
    def body():
        counts = []
        for name in ("cubic-power", "weierstrass", "crunodal"):
            F = named_cubic(name)
            D = decompose(F, exceptional_set(F, "standard"))
            rng = random.Random(name)
            done = 0
            while done < 200:
                pid = rng.randrange(D.patch_count)
                p, q = random_patch_point(D, pid, rng), random_patch_point(D, pid, rng)
                if p == q:
                    continue
                cert = certify_patch_chord(D, pid, p, q)
                assert cert.passed, (name, pid, p, q, cert.interior_roots)
                done += 1
            counts.append(done)
        return f"{sum(counts)} chords certified"

    criterion(capsys, 8, "patch-chord oracle", body, limit=30)


# 9 ------------------------------------------------------------------------


def suite_point_sets():
    out = []
    for path in sorted(SUITE.glob("*.json")):
        inst = json.loads(path.read_text())
        if inst["command"] in ("classify-cubic", "patches"):
            continue
        cfg = cli._with_defaults({k: v for k, v in inst.items() if k not in ("command", "expect")})
        out.append((path.name, cli.load_points(cfg, SUITE)))
    return out


def test_criterion_09_oracle_equivalence(capsys):
    def body():
        compared = 0
        sets = suite_point_sets()
        sets += [(f"one-blocker {m}", gen_one_blocker(m)) for m in (4, 8, 12, 16)]
        sets += [(f"grid {w}", gen_grid(w, 3)) for w in (3, 4, 5)]
        for name, A in sets:
            G = visibility_graph(A)
            assert G.adj == visibility_graph_bruteforce(A).adj, name
            if len(A) <= 18:
                assert len(max_visible_clique(G)) == max_clique_bruteforce(G), name
                compared += 1
        return f"{len(sets)} adjacency checks, {compared} clique checks"

    criterion(capsys, 9, "oracle equivalence", body)


# 10 -----------------------------------------------------------------------


def test_criterion_10_fit_cubic(capsys):
    def body():
        hits = 0
        for seed in range(100):
            r = random.Random(seed)
            s = seed % 4
            ts = sorted(r.sample(range(-30, 31), 40))
            A = PointSet(tuple(Point(t, t**3) for t in ts))
            if s:
                A = plant_outliers(A, s, seed, avoid=lambda p: p.y == p.x**3)
            res = fit_cubic(A, 200, seed)
            hits += res.s is not None and res.s <= s
        assert hits >= 95
        return f"{hits}/100 seeds recovered"

    criterion(capsys, 10, "planted cubic recovery", body, limit=60)
