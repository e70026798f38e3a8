"""Visibility patches of an irreducible cubic as graphs of branches over x-intervals.

The x-axis is cut at every exceptional x-coordinate.  Between two cuts the
real branches of the curve are indexed by rank (0 = lowest).  A cell is a
pair (slab, rank); cells on either side of a cut are joined when the curve
crosses the cut at an ordinary point.  Connected groups of cells are the
patches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .cubic import (
    AlgReal,
    ExceptionalSet,
    TernaryForm,
    alg_bounds,
    alg_cmp,
    alg_float,
    alg_json,
    exceptional_set,
    to_chart,
)
from .errors import (
    CertificationFailure,
    InconsistentExceptionalSet,
    NotACubic,
    PointsNotOnPatch,
    UnknownPatch,
)
from .exact.bipoly import BiPoly
from .exact.poly import (
    UniPoly,
    count_roots,
    simplest_between,
    squarefree_part,
    sturm_sequence,
)
from .exact.roots import (
    Cmp,
    IsolatedRoot,
    compare_root_rational,
    refine,
    roots_equal,
    sign_at,
    sturm_isolate,
)
from .geometry import Point

PATCH_LIMIT = 15


@dataclass
class Patch:
    id: int
    cells: list  # (slab, rank), ascending in slab
    lo: object  # AlgReal or "-inf"
    hi: object  # AlgReal or "+inf"
    convexity: int

    def to_json(self) -> dict:
        def end(v):
            return v if isinstance(v, str) else alg_json(v)

        return {
            "id": self.id,
            "lo": end(self.lo),
            "hi": end(self.hi),
            "branch_trace": [[s, r] for s, r in self.cells],
            "convexity": self.convexity,
        }


@dataclass
class PatchDecomposition:
    form: TernaryForm
    exceptional: ExceptionalSet
    lam: Fraction
    f: BiPoly  # chart equation
    cuts: list
    probes: list  # rational x per slab
    branch_counts: list  # real y-roots per slab
    patches: list
    cell_patch: dict  # (slab, rank) -> patch id
    merge_points: dict  # (cut, root) -> patch id
    cell_count: int = 0

    @property
    def patch_count(self) -> int:
        return len(self.patches)

    def to_json(self) -> dict:
        return {
            "chart": self.exceptional.chart,
            "lambda": str(self.lam),
            "cuts": [alg_json(c) for c in self.cuts],
            "cuts_approx": [alg_float(c) for c in self.cuts],
            "branch_counts": self.branch_counts,
            "cells": self.cell_count,
            "patch_count": self.patch_count,
            "patches": [p.to_json() for p in self.patches],
            "exceptional": self.exceptional.to_json(),
        }


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def add(self, a):
        self.parent.setdefault(a, a)

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _separate_cuts(cuts: list) -> list:
    """Refine irrational cuts until consecutive enclosures are strictly ordered."""
    cuts = list(cuts)
    changed = True
    while changed:
        changed = False
        for i in range(len(cuts) - 1):
            a, b = cuts[i], cuts[i + 1]
            if alg_bounds(a)[1] >= alg_bounds(b)[0]:
                if isinstance(a, IsolatedRoot):
                    cuts[i] = refine(a, a.width / 2)
                if isinstance(b, IsolatedRoot):
                    cuts[i + 1] = refine(b, b.width / 2)
                changed = True
    return cuts


def _slab_probes(cuts: list) -> list[Fraction]:
    if not cuts:
        return [Fraction(0)]
    probes = [Fraction(math.floor(alg_bounds(cuts[0])[0]) - 1)]
    for a, b in zip(cuts, cuts[1:]):
        probes.append(simplest_between(alg_bounds(a)[1], alg_bounds(b)[0]))
    probes.append(Fraction(math.floor(alg_bounds(cuts[-1])[1]) + 1))
    return probes


def _real_root_count(p: UniPoly, lo="-inf", hi="+inf") -> int:
    if not p:
        raise InconsistentExceptionalSet("vertical line inside the curve")
    if p.degree <= 0:
        return 0
    return count_roots(sturm_sequence(squarefree_part(p)), lo, hi)


def _between(a, b) -> Fraction:
    """A rational strictly between two distinct fiber roots a < b."""
    while _hi(a) >= _lo(b):
        if isinstance(a, IsolatedRoot):
            a = refine(a, a.width / 2)
        if isinstance(b, IsolatedRoot):
            b = refine(b, b.width / 2)
    return simplest_between(_hi(a), _lo(b))


def _fiber_separators(roots: list) -> list[Fraction]:
    """Rationals beta_0 < y_1 < beta_1 < ... < y_m < beta_m."""
    if not roots:
        return [Fraction(0)]
    seps = [Fraction(math.floor(_lo(roots[0])) - 1)]
    seps += [_between(a, b) for a, b in zip(roots, roots[1:])]
    seps.append(Fraction(math.floor(_hi(roots[-1])) + 1))
    return seps


def _lo(r) -> Fraction:
    return r if isinstance(r, Fraction) else r.lo


def _hi(r) -> Fraction:
    return r if isinstance(r, Fraction) else r.hi


def _convexity_at(f: BiPoly, x: Fraction, y: IsolatedRoot) -> int:
    """Sign of y'' along the branch through (x, y) by implicit differentiation."""
    fx, fy = f.diff_x(), f.diff_y()
    fxx, fxy, fyy = fx.diff_x(), fx.diff_y(), fy.diff_y()
    N = fxx * fy * fy - 2 * fxy * fx * fy + fyy * fx * fx
    sN = sign_at(y, N.at_x(x))
    sY = sign_at(y, fy.at_x(x))
    if sY == 0:
        raise InconsistentExceptionalSet("vertical tangent inside a slab")
    return -sN * sY


def decompose(F: TernaryForm, E: Optional[ExceptionalSet] = None) -> PatchDecomposition:
    if F.degree != 3:
        raise NotACubic("patch decomposition needs a cubic form")
    if E is None:
        E = exceptional_set(F, "standard")
    if E.form != F:
        raise ValueError("exceptional set was computed for a different form")
    f = E.chart_form.dehomogenize()
    cuts = _separate_cuts(E.cuts)
    probes = _slab_probes(cuts)
    counts = [_real_root_count(f.at_x(x)) for x in probes]
    uf = _UnionFind()
    for s, n in enumerate(counts):
        for r in range(n):
            uf.add((s, r))
    merge_at: dict = {}
    for i, c in enumerate(cuts):
        fib = E.fibers[i]
        ordinary = [j for j, pt in enumerate(fib.points) if pt is None]
        if not ordinary:
            continue
        betas = _fiber_separators(fib.roots)
        gs = [f.at_y(b) for b in betas]
        gseqs = [sturm_sequence(squarefree_part(g)) if g.degree > 0 else None for g in gs]
        left, right = probes[i], probes[i + 1]
        cur = c
        while True:
            if isinstance(cur, Fraction):
                w = min(cur - left, right - cur) / 2
                lo, hi = cur - w, cur + w
            else:
                lo, hi = cur.lo, cur.hi
            clean = lo > left and hi < right
            if clean:
                for g, seq in zip(gs, gseqs):
                    if g(lo) == 0 or (seq is not None and count_roots(seq, lo, hi) > 0):
                        clean = False
                        break
            if clean:
                break
            if isinstance(cur, Fraction):
                left, right = cur - w, cur + w
            else:
                cur = refine(cur, cur.width / 2)
        band_l = _band_counts(f.at_x(lo), betas)
        band_r = _band_counts(f.at_x(hi), betas)
        off_l = [sum(band_l[:k]) for k in range(len(band_l))]
        off_r = [sum(band_r[:k]) for k in range(len(band_r))]
        for j in ordinary:
            band = j + 1
            if band_l[band] != 1 or band_r[band] != 1:
                raise InconsistentExceptionalSet(
                    f"ordinary fiber point {j} at cut {i} meets {band_l[band]}/{band_r[band]} branches"
                )
            a, b = (i, off_l[band]), (i + 1, off_r[band])
            uf.union(a, b)
            merge_at[(i, j)] = a
    groups: dict = {}
    for cell in sorted(uf.parent):
        groups.setdefault(uf.find(cell), []).append(cell)
    patches = []
    cell_patch = {}
    for pid, root in enumerate(sorted(groups)):
        cells = sorted(groups[root])
        s0, s1 = cells[0][0], cells[-1][0]
        lo = cuts[s0 - 1] if s0 > 0 else "-inf"
        hi = cuts[s1] if s1 < len(cuts) else "+inf"
        signs = set()
        for s, r in cells:
            ys = sturm_isolate(f.at_x(probes[s]))
            signs.add(_convexity_at(f, probes[s], ys[r]))
        if len(signs) != 1:
            raise InconsistentExceptionalSet(f"convexity changes along patch {pid}")
        patches.append(Patch(pid, cells, lo, hi, signs.pop()))
        for cell in cells:
            cell_patch[cell] = pid
    merge_points = {k: cell_patch[v] for k, v in merge_at.items()}
    D = PatchDecomposition(F, E, E.lam, f, cuts, probes, counts, patches, cell_patch, merge_points, sum(counts))
    if E.chart == "sheared" and D.patch_count > PATCH_LIMIT:
        raise CertificationFailure(f"{D.patch_count} patches exceed the bound {PATCH_LIMIT}")
    return D


def _band_counts(p: UniPoly, betas: list[Fraction]) -> list[int]:
    edges = ["-inf"] + list(betas) + ["+inf"]
    if p.degree <= 0:
        return [0] * (len(edges) - 1)
    seq = sturm_sequence(squarefree_part(p))
    return [count_roots(seq, a, b) for a, b in zip(edges, edges[1:])]


def decompose_with_fallback(F: TernaryForm, chart: str = "standard") -> tuple[PatchDecomposition, list[str]]:
    """Decompose in the requested chart; if a standard chart exceeds the bound, also use the sheared one."""
    notes = []
    D = decompose(F, exceptional_set(F, chart))
    if chart == "standard" and D.patch_count > PATCH_LIMIT:
        notes.append(f"standard chart gave {D.patch_count} patches; using the sheared chart")
        D = decompose(F, exceptional_set(F, "sheared"))
    return D, notes


# -- assignment and chord certificates ------------------------------------


@dataclass(frozen=True)
class PatchId:
    id: int


@dataclass(frozen=True)
class ExceptionalPointId:
    id: int


@dataclass(frozen=True)
class NotOnCurve:
    pass


Assignment = Union[PatchId, ExceptionalPointId, NotOnCurve]


def assign_point(D: PatchDecomposition, p: Point) -> Assignment:
    x, y = to_chart(D.lam, p.x, p.y)
    if D.f(x, y) != 0:
        return NotOnCurve()
    # slab index = number of cuts strictly below x, or a cut hit exactly
    s = 0
    for i, c in enumerate(D.cuts):
        cmp = alg_cmp(c, x)
        if cmp == 0:
            fib = D.exceptional.fibers[i]
            for j, r in enumerate(fib.roots):
                if alg_cmp(r, y) == 0:
                    pt = fib.points[j]
                    if pt is not None:
                        return ExceptionalPointId(_index_of(D.exceptional.points, pt))
                    return PatchId(D.merge_points[(i, j)])
            raise InconsistentExceptionalSet("curve point missing from its cut fiber")
        if cmp < 0:
            s = i + 1
        else:
            break
    phi = D.f.at_x(x)
    rank = _real_root_count(phi, "-inf", y) - 1
    return PatchId(D.cell_patch[(s, rank)])


def _index_of(items: list, obj) -> int:
    for i, it in enumerate(items):
        if it is obj:
            return i
    raise ValueError("point not registered")


@dataclass
class ChordCertificate:
    patch: int
    p: Point
    q: Point
    passed: bool
    interior_roots: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "patch": self.patch,
            "p": self.p.to_json(),
            "q": self.q.to_json(),
            "passed": self.passed,
            "interior_roots": self.interior_roots,
        }


def chord_polynomial(F: TernaryForm, p: Point, q: Point) -> UniPoly:
    """t -> F(p + t (q - p), 1) in the user's coordinates."""
    return F.dehomogenize().on_line((p.x, p.y), (q.x, q.y))


def chord_interior_roots(F: TernaryForm, p: Point, q: Point) -> Optional[list[float]]:
    """Real roots of the chord polynomial in the open interval (0, 1); None if the line lies on the curve."""
    g = chord_polynomial(F, p, q)
    if not g:
        return None
    if g.degree <= 0:
        return []
    out = []
    for r in sturm_isolate(g):
        if r.hi <= 0 or r.lo >= 1:
            continue
        v = refine(r, Fraction(1, 2**40))
        if compare_root_rational(r, 0) == Cmp.GREATER and compare_root_rational(r, 1) == Cmp.LESS:
            out.append(float((v.lo + v.hi) / 2))
    return out


def _as_pair(p):
    if isinstance(p, Point):
        return p.x, p.y
    return Fraction(p[0]), p[1] if isinstance(p[1], IsolatedRoot) else Fraction(p[1])


def assign_curve_point(D: PatchDecomposition, x: Fraction, y) -> Assignment:
    """Like assign_point, but y may be an isolated root (x rational, standard chart only)."""
    if not isinstance(y, IsolatedRoot):
        return assign_point(D, Point(x, y))
    if D.lam != 0:
        raise ValueError("algebraic query points need the standard chart")
    x = Fraction(x)
    phi = D.f.at_x(x)
    if not _root_vanishes(y, phi):
        return NotOnCurve()
    s = 0
    for i, c in enumerate(D.cuts):
        cmp = alg_cmp(c, x)
        if cmp == 0:
            fib = D.exceptional.fibers[i]
            for j, r in enumerate(fib.roots):
                if not isinstance(r, Fraction) and roots_equal(r, y):
                    pt = fib.points[j]
                    if pt is not None:
                        return ExceptionalPointId(_index_of(D.exceptional.points, pt))
                    return PatchId(D.merge_points[(i, j)])
            raise InconsistentExceptionalSet("curve point missing from its cut fiber")
        if cmp < 0:
            s = i + 1
        else:
            break
    for rank, r in enumerate(sturm_isolate(phi)):
        if roots_equal(r, y):
            return PatchId(D.cell_patch[(s, rank)])
    raise InconsistentExceptionalSet("fiber root not found")


def _root_vanishes(y: IsolatedRoot, g: UniPoly) -> bool:
    from .exact.poly import poly_gcd

    h = poly_gcd(y.poly, g)
    return h.degree > 0 and count_roots(sturm_sequence(h), y.lo, y.hi) > 0


def chord_interior_count_algebraic(F: TernaryForm, p, q) -> Optional[int]:
    """Roots in (0, 1) of t -> F(p + t (q - p), 1) with algebraic y-coordinates."""
    from .exact.field import RootField, common_field

    (px, py), (qx, qy) = p, q
    ry = [v for v in (py, qy) if isinstance(v, IsolatedRoot)]
    if not ry:
        roots = chord_interior_roots(F, Point(px, py), Point(qx, qy))
        return None if roots is None else len(roots)
    if len(ry) == 2:
        K, ey_p, ey_q = common_field(py, qy)
    else:
        K = RootField(ry[0])
        ey_p = K.gen() if isinstance(py, IsolatedRoot) else K(py)
        ey_q = K.gen() if isinstance(qy, IsolatedRoot) else K(qy)
    X = UniPoly([K(px), K(qx - px)])
    Y = UniPoly([ey_p, ey_q - ey_p])
    g = UniPoly()
    for (i, j), v in F.dehomogenize().terms.items():
        g = g + (X**i) * (Y**j) * v
    if not g:
        return None
    from .exact.poly import squarefree_part as sqf

    seq = sturm_sequence(sqf(g))
    n = count_roots(seq, Fraction(0), Fraction(1))
    return n - (1 if g(Fraction(1)) == 0 else 0)


def certify_patch_chord(D: PatchDecomposition, patch: int, p, q) -> ChordCertificate:
    """Independent check that the open segment pq misses the curve.

    Points are rational, or (for curves without enough rational points) pairs
    (x, y) with rational x and y an isolated root of f(x, .).
    """
    if not 0 <= patch < D.patch_count:
        raise UnknownPatch(patch)
    (px, py), (qx, qy) = _as_pair(p), _as_pair(q)
    ap, aq = assign_curve_point(D, px, py), assign_curve_point(D, qx, qy)
    if ap != PatchId(patch) or aq != PatchId(patch) or (px, py) == (qx, qy):
        raise PointsNotOnPatch(f"{p} -> {ap}, {q} -> {aq}, expected patch {patch}")
    if isinstance(py, Fraction) and isinstance(qy, Fraction):
        P, Q = Point(px, py), Point(qx, qy)
        roots = chord_interior_roots(D.form, P, Q)
        if roots is None:
            return ChordCertificate(patch, P, Q, False, ["segment lies on the curve"])
        return ChordCertificate(patch, P, Q, not roots, roots)
    n = chord_interior_count_algebraic(D.form, (px, py), (qx, qy))
    P = Point(px, Fraction(py.approx(6)).limit_denominator(10**6) if isinstance(py, IsolatedRoot) else py)
    Q = Point(qx, Fraction(qy.approx(6)).limit_denominator(10**6) if isinstance(qy, IsolatedRoot) else qy)
    if n is None:
        return ChordCertificate(patch, P, Q, False, ["segment lies on the curve"])
    return ChordCertificate(patch, P, Q, n == 0, [f"{n} interior roots"] if n else [])


def random_patch_point(D: PatchDecomposition, patch: int, rng, span: int = 4):
    """A curve point (x, y) on the patch with random rational chart x; y exact or isolated."""
    P = D.patches[patch]
    s, r = P.cells[rng.randrange(len(P.cells))]
    lo = alg_bounds(D.cuts[s - 1])[1] if s > 0 else None
    hi = alg_bounds(D.cuts[s])[0] if s < len(D.cuts) else None
    if lo is None:
        lo = (hi if hi is not None else Fraction(0)) - span
    if hi is None:
        hi = lo + span
    x = lo + (hi - lo) * Fraction(rng.randint(1, 999), 1000)
    ys = sturm_isolate(D.f.at_x(x))
    y = ys[r]
    return x, (y.hi if y.is_exact() else y)


def patch_points_at(D: PatchDecomposition, patch: int, x: Fraction) -> list:
    """Curve points of a patch above a rational chart x (as isolated y-roots)."""
    P = D.patches[patch]
    out = []
    for s, r in P.cells:
        lo = D.cuts[s - 1] if s > 0 else None
        hi = D.cuts[s] if s < len(D.cuts) else None
        if (lo is None or alg_cmp(lo, x) < 0) and (hi is None or alg_cmp(hi, x) > 0):
            ys = sturm_isolate(D.f.at_x(x))
            out.append(ys[r])
    return out


def convexity_probe(D: PatchDecomposition, patch: int, x: Fraction) -> Optional[int]:
    ys = patch_points_at(D, patch, x)
    if not ys:
        return None
    return _convexity_at(D.f, x, ys[0])


def slab_of(D: PatchDecomposition, x: Fraction) -> Optional[int]:
    s = 0
    for i, c in enumerate(D.cuts):
        cmp = alg_cmp(c, x)
        if cmp == 0:
            return None
        if cmp < 0:
            s = i + 1
    return s

