"""Visibility graphs, exact maximum cliques and blocker-colouring covers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import BudgetExceeded, CertificationFailure, ThreeCollinearInPatch
from .geometry import PointSet, _line_classes, strictly_between


@dataclass
class VisibilityGraph:
    n: int
    adj: list  # bitset rows
    witness: dict  # (i, j) with i < j -> smallest blocking index

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def edge_count(self) -> int:
        return sum(bin(r).count("1") for r in self.adj) // 2

    def non_edges(self) -> list[tuple[int, int]]:
        return sorted(self.witness)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "edges": self.edge_count(),
            "non_edges": [[i, j, w] for (i, j), w in sorted(self.witness.items())],
        }


def visibility_graph(A: PointSet) -> VisibilityGraph:
    """Adjacency from line classes: only pairs on rich lines can be blocked."""
    n = len(A)
    full = (1 << n) - 1
    adj = [full & ~(1 << i) for i in range(n)]
    witness = {}
    for members in _line_classes(A).values():
        if len(members) < 3:
            continue
        # lexicographic order is the order along the line
        order = sorted(members, key=lambda i: (A[i].x, A[i].y))
        for a in range(len(order)):
            inner_min = None
            for b in range(a + 2, len(order)):
                m = order[b - 1]
                inner_min = m if inner_min is None else min(inner_min, m)
                i, j = sorted((order[a], order[b]))
                adj[i] &= ~(1 << j)
                adj[j] &= ~(1 << i)
                witness[(i, j)] = inner_min
    return VisibilityGraph(n, adj, witness)


def visibility_graph_bruteforce(A: PointSet) -> VisibilityGraph:
    """Independent O(n^3) scan over all triples."""
    n = len(A)
    adj = [0] * n
    witness = {}
    for i in range(n):
        for j in range(i + 1, n):
            w = next((r for r in range(n) if strictly_between(A[i], A[j], A[r])), None)
            if w is None:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            else:
                witness[(i, j)] = w
    return VisibilityGraph(n, adj, witness)


def is_visible(A: PointSet, i: int, j: int) -> bool:
    return not any(strictly_between(A[i], A[j], r) for r in A)


# -- maximum clique -------------------------------------------------------


def _mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def max_visible_clique(
    G: VisibilityGraph, node_budget: int = 1_000_000, within: Optional[Iterable[int]] = None
) -> list[int]:
    """Exact maximum clique by branch and bound with a greedy-colouring bound.

    Raises BudgetExceeded (carrying the best clique found) when more than
    ``node_budget`` search nodes would be needed.
    """
    if node_budget <= 0:
        raise ValueError("node_budget must be positive")
    adj = G.adj
    P0 = _mask(range(G.n)) if within is None else _mask(within)
    if not P0:
        return []
    best: list[int] = []
    # greedy start
    P = P0
    while P:
        v = max(_bits(P), key=lambda u: bin(adj[u] & P).count("1"))
        best.append(v)
        P &= adj[v]
    nodes = 0

    def colour_order(P: int):
        order, colours = [], []
        k = 0
        while P:
            k += 1
            Q = P
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                Q &= ~low & ~adj[v]
                P &= ~low
                order.append(v)
                colours.append(k)
        return order, colours

    def expand(R: list, P: int):
        nonlocal nodes, best
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded(sorted(best), nodes - 1)
        order, colours = colour_order(P)
        for idx in range(len(order) - 1, -1, -1):
            if len(R) + colours[idx] <= len(best):
                return
            v = order[idx]
            R.append(v)
            newP = P & adj[v]
            if newP:
                expand(R, newP)
            elif len(R) > len(best):
                best = list(R)
            R.pop()
            P &= ~(1 << v)

    expand([], P0)
    return sorted(best)


def max_clique_bruteforce(G: VisibilityGraph, within: Optional[Iterable[int]] = None) -> int:
    """Clique number by subset enumeration; only for small graphs."""
    verts = list(range(G.n)) if within is None else sorted(within)
    k = len(verts)
    if k > 22:
        raise ValueError("brute force limited to 22 vertices")
    local = [_mask(b for b, u in enumerate(verts) if u != v and G.adjacent(u, v)) for v in verts]
    clique = bytearray(1 << k)
    clique[0] = 1
    best = 0
    for mask in range(1, 1 << k):
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        if clique[rest] and rest & ~local[v] == 0:
            clique[mask] = 1
            c = bin(mask).count("1")
            if c > best:
                best = c
    return best


# -- blockers and covers --------------------------------------------------


@dataclass
class BlockerSet:
    indices: list
    disjoint_from_x: bool

    @property
    def b(self) -> int:
        return len(self.indices)

    def to_json(self) -> dict:
        return {"indices": self.indices, "b": self.b, "disjoint_from_x": self.disjoint_from_x}


def blocker_set(A: PointSet, X: Iterable[int]) -> BlockerSet:
    """All points of A lying strictly inside a segment between two points of X."""
    xs = set(X)
    found = set()
    for members in _line_classes(A).values():
        if len(members) < 3:
            continue
        order = sorted(members, key=lambda i: (A[i].x, A[i].y))
        pos = [t for t, i in enumerate(order) if i in xs]
        if len(pos) >= 2:
            found.update(order[pos[0] + 1 : pos[-1]])
    return BlockerSet(sorted(found), not (found & xs))


@dataclass
class CliqueCover:
    scope: list
    parts: list
    certified: bool
    b: int = 0
    blockers: list = field(default_factory=list)
    max_degree: int = 0

    def to_json(self) -> dict:
        return {"scope": self.scope, "parts": self.parts, "certified": self.certified, "b": self.b}


def meets_three(A: PointSet, X: Iterable[int]) -> Optional[list[int]]:
    """Three indices of X on a common line, or None."""
    xs = set(X)
    for members in _line_classes(A.subset(sorted(xs))).values():
        if len(members) >= 3:
            idx = sorted(xs)
            return [idx[m] for m in members[:3]]
    return None


def recertify_cover(A: PointSet, cover: CliqueCover) -> bool:
    """From-scratch check: parts partition the scope and are mutually visible."""
    flat = [i for part in cover.parts for i in part]
    if sorted(flat) != sorted(cover.scope) or len(set(flat)) != len(flat):
        return False
    for part in cover.parts:
        for a in range(len(part)):
            for c in range(a + 1, len(part)):
                if not is_visible(A, part[a], part[c]):
                    return False
    return True


def blocker_colouring_cover(
    A: PointSet, X: Iterable[int], G: Optional[VisibilityGraph] = None
) -> CliqueCover:
    """Greedy colouring of the non-visibility graph on X, in ascending index order.

    With b blockers, every blocker's blocked pairs form a matching, so the
    non-visibility graph has maximum degree at most b and the colouring uses at
    most b + 1 colours.  All of this is checked, not assumed.
    """
    xs = sorted(set(X))
    if not xs:
        return CliqueCover([], [], True, 0)
    triple = meets_three(A, xs)
    if triple is not None:
        raise ThreeCollinearInPatch(f"points {triple} of the scope are collinear")
    if G is None:
        G = visibility_graph(A)
    bs = blocker_set(A, xs)
    b = bs.b
    H = {v: [] for v in xs}
    by_blocker: dict = {}
    for a in range(len(xs)):
        for c in range(a + 1, len(xs)):
            i, j = xs[a], xs[c]
            if not G.adjacent(i, j):
                H[i].append(j)
                H[j].append(i)
                by_blocker.setdefault(G.witness[(i, j)], []).append((i, j))
    for r, edges in by_blocker.items():
        ends = [v for e in edges for v in e]
        if len(ends) != len(set(ends)):
            raise CertificationFailure(f"pairs blocked by {r} do not form a matching")
        if r not in bs.indices:
            raise CertificationFailure(f"witness {r} missing from the blocker set")
    max_deg = max(len(nb) for nb in H.values())
    if max_deg > b:
        raise CertificationFailure(f"non-visibility degree {max_deg} exceeds b = {b}")
    colour = {}
    for v in xs:
        used = {colour[u] for u in H[v] if u in colour}
        c = 0
        while c in used:
            c += 1
        colour[v] = c
    k = max(colour.values()) + 1
    parts = [[v for v in xs if colour[v] == c] for c in range(k)]
    if k > b + 1:
        raise CertificationFailure(f"{k} colours used with b = {b}")
    cover = CliqueCover(xs, parts, False, b, bs.indices, max_deg)
    cover.certified = recertify_cover(A, cover)
    if not cover.certified:
        raise CertificationFailure("a colour class is not mutually visible")
    return cover
