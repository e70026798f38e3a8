"""Collinear-triple counts and degree pruning to a dense core.

Each point's degree is the number of collinear triples through it, counted
from line classes as the sum of C(size - 1, 2) over lines through the point.
Pruning deletes low-degree points until every survivor has degree at least
delta * n / 2, with n the original size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import BudgetExceeded, CliqueBudgetExceeded, TooFewPoints
from .geometry import PointSet, _line_classes
from .visibility import max_visible_clique, visibility_graph


@dataclass
class TripleHypergraph:
    n: int
    lines: list  # member lists of lines with >= 3 points
    degree: list
    rich_count: list  # 3-rich lines through each point
    T: int

    def to_json(self) -> dict:
        return {"n": self.n, "T": self.T, "degree": self.degree, "rich_count": self.rich_count}


def _c2(x: int) -> int:
    return x * (x - 1) // 2 if x >= 2 else 0


def triple_stats(A: PointSet) -> TripleHypergraph:
    n = len(A)
    if n < 3:
        raise TooFewPoints("need at least three points")
    lines = [m for m in _line_classes(A).values() if len(m) >= 3]
    deg = [0] * n
    rich = [0] * n
    T = 0
    for m in lines:
        c = len(m)
        T += math.comb(c, 3)
        for p in m:
            deg[p] += _c2(c - 1)
            rich[p] += 1
    assert sum(deg) == 3 * T
    return TripleHypergraph(n, lines, deg, rich, T)


def orchard_constants(k: int, l: int) -> tuple[Fraction, int]:
    """delta = 1 / (12 (l - 1)) and D_k = C(k - 2, 2)."""
    if k < 4 or l < 2:
        raise ValueError("need k >= 4 and l >= 2")
    return Fraction(1, 12 * (l - 1)), math.comb(k - 2, 2)


@dataclass
class OrchardCore:
    survivors: list
    n: int
    delta: Fraction
    D_k: int
    degree: dict  # survivor -> triples within the core
    rich_count: dict  # survivor -> 3-rich lines within the core
    deletion_order: list
    status: str = "Unchecked"
    checks: dict = field(default_factory=dict)

    @property
    def threshold(self) -> Fraction:
        return self.delta * self.n / 2

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "delta": str(self.delta),
            "D_k": self.D_k,
            "threshold": str(self.threshold),
            "survivors": self.survivors,
            "degree": {str(p): d for p, d in sorted(self.degree.items())},
            "rich_count": {str(p): c for p, c in sorted(self.rich_count.items())},
            "deletions": len(self.deletion_order),
            "status": self.status,
            "checks": self.checks,
        }


def orchard_core(A: PointSet, k: int, l: int) -> OrchardCore:
    """Delete, in ascending index order, any point of degree below delta n / 2."""
    delta, D_k = orchard_constants(k, l)
    n = len(A)
    H = triple_stats(A) if n >= 3 else TripleHypergraph(n, [], [0] * n, [0] * n, 0)
    size = [len(m) for m in H.lines]
    through: list = [[] for _ in range(n)]
    for li, m in enumerate(H.lines):
        for p in m:
            through[p].append(li)
    deg = list(H.degree)
    T = H.T
    alive = [True] * n
    thr = delta * n / 2
    order = []
    while True:
        v = next((p for p in range(n) if alive[p] and deg[p] < thr), None)
        if v is None:
            break
        alive[v] = False
        order.append(v)
        deg[v] = 0
        for li in through[v]:
            c = size[li]
            T -= _c2(c - 1)
            for q in H.lines[li]:
                if alive[q]:
                    deg[q] += _c2(c - 2) - _c2(c - 1)
            size[li] = c - 1
        assert sum(deg) == 3 * T
    survivors = [p for p in range(n) if alive[p]]
    rich = {p: sum(1 for li in through[p] if size[li] >= 3) for p in survivors}
    core = OrchardCore(survivors, n, delta, D_k, {p: deg[p] for p in survivors}, rich, order)
    assert all(deg[p] >= thr for p in survivors)
    return core


def verify_orchard_guarantees(
    core: OrchardCore, A: PointSet, k: int, l: int, clique_budget: int = 200_000
) -> OrchardCore:
    """Check the hypotheses; when they hold, assert both size guarantees on the core.

    Sets ``core.status`` to Applicable, NotApplicable or Violated.  Raises
    CliqueBudgetExceeded when the clique hypothesis cannot be decided.
    """
    from .geometry import max_collinear

    n = len(A)
    if core.n != n:
        raise ValueError("core was computed from a different set")
    mc = max_collinear(A)
    checks: dict = {"max_collinear": mc, "collinear_ok": mc < k, "size_ok": n >= 4 * (l - 1)}
    degrees_ok = all(d >= core.threshold for d in core.degree.values())
    checks["survivor_degrees_ok"] = degrees_ok
    w: Optional[int] = None
    if checks["collinear_ok"] and checks["size_ok"]:
        try:
            w = len(max_visible_clique(visibility_graph(A), clique_budget))
        except BudgetExceeded as e:
            if len(e.best) < l:
                core.checks = checks
                raise CliqueBudgetExceeded(f"clique number undecided after {e.nodes} nodes") from e
            w = len(e.best)
            checks["clique_is_lower_bound"] = True
    checks["max_visible_clique"] = w
    checks["clique_ok"] = w is not None and w < l
    if not (checks["collinear_ok"] and checks["size_ok"] and checks["clique_ok"]):
        core.status = "NotApplicable" if degrees_ok else "Violated"
        core.checks = checks
        return core
    size_bound = Fraction(n, 8 * (l - 1) * core.D_k)
    line_bound = Fraction(n, 24 * (l - 1) * core.D_k)
    checks["core_size_bound"] = str(size_bound)
    checks["line_bound"] = str(line_bound)
    checks["core_size_ok"] = len(core.survivors) >= size_bound
    checks["lines_ok"] = all(c >= line_bound for c in core.rich_count.values())
    ok = checks["core_size_ok"] and checks["lines_ok"] and degrees_ok
    core.status = "Applicable" if ok else "Violated"
    core.checks = checks
    return core
