"""Clique covers for point sets that mostly lie on a real cubic.

On-curve points are split into pieces whose chords avoid the curve.  Each
piece is then covered by blocker colouring.  Failed checks raise; success
returns a report listing what was checked.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cubic import HomogeneousCubic, TernaryForm, classify, exceptional_set
from .errors import (
    BudgetExceeded,
    CertificationFailure,
    DegenerateSample,
    NoFourCollinearRequired,
    NotIrreducibleOrDecomposable,
    PreconditionFailed,
    ThreeLinesExcluded,
    TooFewOnCubic,
    TooFewPoints,
    UnknownPatch,
)
from .exact.linalg import integer_kernel
from .geometry import PointSet, enumerate_lines, max_collinear
from .patches import PATCH_LIMIT, ExceptionalPointId, PatchId, assign_point, decompose
from .visibility import (
    CliqueCover,
    VisibilityGraph,
    blocker_colouring_cover,
    blocker_set,
    max_visible_clique,
    recertify_cover,
    visibility_graph,
)

CUBIC_MONOMIALS = [(i, j, 3 - i - j) for i in range(3, -1, -1) for j in range(3 - i, -1, -1)]


def bound_formula(n: int, s: int, k: int) -> Fraction:
    """max{1, min((n - s - (k-1)) / (s + k), (n - s - 13) / (15 (s + 1)))}."""
    if n < 1 or s < 0 or k < 2:
        raise ValueError("need n >= 1, s >= 0, k >= 2")
    a = Fraction(n - s - (k - 1), s + k)
    b = Fraction(n - s - 13, 15 * (s + 1))
    return max(Fraction(1), min(a, b))


def c_kl(k: int, l: int) -> Fraction:
    """Triple-line density constant 1 / (4 (l-1) C(k-1, 2))."""
    if k < 4 or l < 2:
        raise ValueError("need k >= 4, l >= 2")
    return Fraction(1, 4 * (l - 1) * math.comb(k - 1, 2))


def c_dl(d: int, l: int) -> Fraction:
    """Pair-count density constant 1 / (8 (l-1) C(d, 2))."""
    if d < 2 or l < 2:
        raise ValueError("need d >= 2, l >= 2")
    return Fraction(1, 8 * (l - 1) * math.comb(d, 2))


def on_curve(A: PointSet, F: TernaryForm) -> list[int]:
    return [i for i, p in enumerate(A) if F(p.x, p.y, Fraction(1)) == 0]


@dataclass
class Certificate:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class ContainerReport:
    tag: str
    n: int
    s: int
    m: int
    a: int
    cover: CliqueCover
    cover_bound_claimed: int
    omega_lower_bound: Fraction
    realized_clique: list
    clique_exact: bool
    pieces: list  # per piece: {"kind", "id", "size", "b", "parts"}
    chart: str = ""
    certificates: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.certificates)

    def to_json(self) -> dict:
        return {
            "classification": self.tag,
            "n": self.n,
            "s": self.s,
            "m": self.m,
            "a": self.a,
            "chart": self.chart,
            "cover_size": len(self.cover.parts),
            "cover_bound_claimed": self.cover_bound_claimed,
            "cover": self.cover.parts,
            "pieces": self.pieces,
            "omega_lower_bound": str(self.omega_lower_bound),
            "realized_clique": self.realized_clique,
            "clique_exact": self.clique_exact,
            "certificates": [c.to_json() for c in self.certificates],
        }


def _check(certs: list, name: str, ok: bool, detail: str = "") -> None:
    certs.append(Certificate(name, bool(ok), detail))
    if not ok:
        raise CertificationFailure(f"{name}: {detail}")


def _decompose_for_container(F: TernaryForm, chart: str):
    charts = ["standard", "sheared"] if chart == "auto" else [chart]
    last = None
    for ch in charts:
        D = decompose(F, exceptional_set(F, ch))
        if D.patch_count <= PATCH_LIMIT:
            return D, ch
        last = D
    raise CertificationFailure(f"{last.patch_count} patches exceed {PATCH_LIMIT} in every chart tried")


def cubic_container(
    A: PointSet,
    F: TernaryForm,
    k: int,
    chart: str = "auto",
    clique_budget: int = 200_000,
    G: Optional[VisibilityGraph] = None,
) -> ContainerReport:
    """Certified visible clique cover of A when all but s points lie on F = 0.

    ``chart="auto"`` decomposes in the standard chart and falls back to the
    sheared one when the standard chart gives more than the patch limit.
    """
    n = len(A)
    if k < 2:
        raise ValueError("k must be >= 2")
    mc = max_collinear(A)
    if mc >= k:
        raise PreconditionFailed(f"{mc} collinear points with k = {k}")
    cls = classify(F)
    if cls.tag == "ThreeLines":
        raise ThreeLinesExcluded("the cubic is a union of three real lines")
    if cls.tag == "Unclassified":
        raise NotIrreducibleOrDecomposable(cls.reason)
    on = on_curve(A, F)
    m, s = len(on), n - len(on)
    if m <= 3 * (k - 1):
        raise TooFewOnCubic(f"m = {m} <= 3(k-1) = {3 * (k - 1)}")
    if G is None:
        G = visibility_graph(A)
    off = set(range(n)) - set(on)
    certs: list = []
    parts: list = []
    pieces: list = []
    a = 0
    used_chart = ""

    if cls.tag == "LineConic":
        Q = cls.conic
        on_q = [i for i in on if Q(A[i].x, A[i].y, Fraction(1)) == 0]
        on_l = [i for i in on if i not in set(on_q)]
        a = len(on_l)
        cover = blocker_colouring_cover(A, on_q, G)
        allowed = off | set(on_l)
        _check(certs, "conic blockers off the conic", set(cover.blockers) <= allowed, f"{cover.blockers}")
        _check(certs, "conic parts <= s + a + 1", len(cover.parts) <= s + a + 1, f"{len(cover.parts)} vs {s + a + 1}")
        parts.extend(cover.parts)
        pieces.append({"kind": "conic", "id": 0, "size": len(on_q), "b": cover.b, "parts": len(cover.parts)})
        parts.extend([i] for i in on_l)
        bound = s + 2 * a + 1
    else:
        D, used_chart = _decompose_for_container(F, chart)
        groups: dict = {}
        singles = []
        for i in on:
            asg = assign_point(D, A[i])
            if isinstance(asg, PatchId):
                groups.setdefault(asg.id, []).append(i)
            elif isinstance(asg, ExceptionalPointId):
                singles.append(i)
            else:
                raise CertificationFailure(f"point {i} vanishes on F but was not assigned")
        for pid in sorted(groups):
            cover = blocker_colouring_cover(A, groups[pid], G)
            _check(
                certs,
                f"patch {pid} blockers off the curve",
                set(cover.blockers) <= off,
                f"{cover.blockers}",
            )
            _check(certs, f"patch {pid} parts <= s + 1", len(cover.parts) <= s + 1, f"{len(cover.parts)}")
            parts.extend(cover.parts)
            pieces.append(
                {"kind": "patch", "id": pid, "size": len(groups[pid]), "b": cover.b, "parts": len(cover.parts)}
            )
        for i in singles:
            parts.append([i])
            pieces.append({"kind": "exceptional", "id": i, "size": 1, "b": 0, "parts": 1})
        bound = 15 * (s + 1) + 13

    total = CliqueCover(sorted(on), parts, False, 0)
    total.certified = recertify_cover(A, total)
    _check(certs, "cover recertified", total.certified)
    _check(certs, f"cover size <= {bound}", len(parts) <= bound, f"{len(parts)}")

    omega = bound_formula(n, s, k)
    largest = max(parts, key=len) if parts else []
    exact = True
    try:
        clique = max_visible_clique(G, clique_budget)
    except BudgetExceeded as e:
        clique, exact = e.best, False
    if len(largest) > len(clique):
        clique = sorted(largest)
    _check(
        certs,
        "realized clique >= ceil(bound)",
        len(clique) >= math.ceil(omega),
        f"{len(clique)} vs {omega}",
    )
    _check(certs, "realized clique mutually visible", all(
        G.adjacent(u, v) for x, u in enumerate(clique) for v in clique[x + 1:]
    ))
    return ContainerReport(
        cls.tag, n, s, m, a, total, bound, omega, clique, exact, pieces, used_chart, certs
    )


# -- ordinary lines --------------------------------------------------------


@dataclass
class TuranReport:
    n: int
    t2: int
    t3: int
    e: int
    t2_from_edges: int
    clique: Optional[int]  # None when undecided
    identities_checked: dict

    @property
    def passed(self) -> bool:
        return all(v is not False for v in self.identities_checked.values())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "t2": self.t2,
            "t3": self.t3,
            "e": self.e,
            "t2_from_edges": self.t2_from_edges,
            "max_visible_clique": self.clique,
            "identities_checked": self.identities_checked,
        }


def turan_identities(A: PointSet, clique_budget: int = 200_000, G: Optional[VisibilityGraph] = None) -> TuranReport:
    n = len(A)
    if n < 2:
        raise TooFewPoints("need at least two points")
    st = enumerate_lines(A)
    if max(st.histogram) > 3:
        raise NoFourCollinearRequired(f"{max(st.histogram)} collinear points")
    if G is None:
        G = visibility_graph(A)
    e = G.edge_count()
    pairs = math.comb(n, 2)
    checks = {
        "pairs = t2 + 3 t3": pairs == st.t2 + 3 * st.t3,
        "e = t2 + 2 t3": e == st.t2 + 2 * st.t3,
        "t2 = 3e - 2 C(n,2)": st.t2 == 3 * e - 2 * pairs,
    }
    try:
        w = len(max_visible_clique(G, clique_budget))
    except BudgetExceeded:
        w = None
    # None marks "not applicable": the clique hypothesis fails or is undecided
    checks["t2 <= n when clique < 4"] = (st.t2 <= n) if w is not None and w < 4 else None
    return TuranReport(n, st.t2, st.t3, e, 3 * e - 2 * pairs, w, checks)


# -- cubic fitting ---------------------------------------------------------


def monomial_row(p) -> list[Fraction]:
    return [p.x**i * p.y**j for i, j, _ in CUBIC_MONOMIALS]


def integer_row(p) -> list[int]:
    """The monomial row of p with denominators cleared; zero tests are unchanged."""
    row = monomial_row(p)
    den = math.lcm(*(c.denominator for c in row))
    return [int(c * den) for c in row]


def form_from_vector(v) -> HomogeneousCubic:
    return HomogeneousCubic({key: c for key, c in zip(CUBIC_MONOMIALS, v) if c != 0})


@dataclass
class FitResult:
    form: Optional[HomogeneousCubic]
    s: Optional[int]
    off_curve: list
    trials: int
    degenerate: int
    seed: int

    def to_json(self) -> dict:
        return {
            "cubic": self.form.to_json() if self.form is not None else None,
            "s": self.s,
            "off_curve": self.off_curve,
            "trials": self.trials,
            "degenerate_samples": self.degenerate,
            "seed": self.seed,
        }


def fit_cubic(A: PointSet, trials: int = 200, seed: int = 0) -> FitResult:
    """Best cubic through 9 sampled points, by exact nullspace, over ``trials`` samples.

    Samples whose cubic is not unique are counted as degenerate and skipped.
    When every sample is degenerate the result has no form.
    """
    n = len(A)
    if n < 10:
        raise TooFewPoints("fit_cubic needs at least 10 points")
    rng = random.Random(seed)
    rows = [integer_row(p) for p in A]
    best: Optional[tuple] = None
    degenerate = 0
    done = 0
    for _ in range(trials):
        done += 1
        sample = rng.sample(range(n), 9)
        _, v = integer_kernel([rows[i] for i in sample])
        if v is None:
            degenerate += 1
            continue
        off = [i for i in range(n) if sum(c * r for c, r in zip(v, rows[i])) != 0]
        if best is None or len(off) < len(best[1]):
            best = (v, off)
            if not off:
                break
    if best is None:
        return FitResult(None, None, [], done, degenerate, seed)
    return FitResult(form_from_vector(best[0]), len(best[1]), best[1], done, degenerate, seed)


def fit_cubic_strict(A: PointSet, trials: int = 200, seed: int = 0) -> FitResult:
    res = fit_cubic(A, trials, seed)
    if res.form is None:
        raise DegenerateSample(f"all {res.trials} samples had a non-unique cubic")
    return res


# -- ambient blockers ------------------------------------------------------


def ambient_container_check(
    A: PointSet, F: TernaryForm, patch_id, alpha: Fraction, beta: Fraction, chart: str = "auto"
) -> dict:
    """Count blockers off the curve for pairs inside one patch W.

    ``patch_id`` is a patch index of the decomposition, or ``"conic"`` for the
    conic component of a line-times-conic cubic (a single patch).
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha <= 0 or beta <= 0:
        raise ValueError("alpha and beta must be positive")
    n = len(A)
    on = on_curve(A, F)
    off = set(range(n)) - set(on)
    if patch_id == "conic":
        cls = classify(F)
        if cls.tag != "LineConic":
            raise UnknownPatch("conic")
        W = [i for i in on if cls.conic(A[i].x, A[i].y, Fraction(1)) == 0]
    else:
        D, _ = _decompose_for_container(F, chart)
        pid = int(patch_id)
        if not 0 <= pid < D.patch_count:
            raise UnknownPatch(patch_id)
        W = [i for i in on if assign_point(D, A[i]) == PatchId(pid)]
    size = len(W)
    blockers = [i for i in blocker_set(A, W).indices if i in off]
    return {
        "patch": patch_id,
        "n": n,
        "size": size,
        "alpha": str(alpha),
        "beta": str(beta),
        "size_ok": size >= alpha * n,
        "blockers": blockers,
        "blocker_count": len(blockers),
        "blockers_ok": len(blockers) <= beta * size,
        "clique_lower_bound": str(Fraction(size) / (beta * size + 1)),
    }
