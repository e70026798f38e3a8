"""Small dense linear algebra over Q."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Fraction(v) for v in row] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace(rows: Sequence[Sequence], ncols: Optional[int] = None) -> list[list[Fraction]]:
    """Basis of the right kernel."""
    if not rows:
        n = ncols or 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    m, pivots = rref(rows)
    n = len(m[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -m[i][f]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> Optional[list[Fraction]]:
    """One solution of ``a x = b`` or None when inconsistent."""
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    m, pivots = rref(aug)
    n = len(a[0])
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        x[p] = m[i][n]
    return x


def det(rows: Sequence[Sequence]) -> Fraction:
    m = [[Fraction(v) for v in row] for row in rows]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1]) if rows else 0


def integer_kernel(rows: Sequence[Sequence[int]]) -> tuple[int, Optional[list[int]]]:
    """Fraction-free (Bareiss) elimination on an integer matrix.

    Returns (nullity, v) where v is a primitive integer kernel vector when the
    nullity is exactly 1, else None.
    """
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0])
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            f = m[i][c]
            m[i] = [(p * a - f * b) // prev for a, b in zip(m[i], m[r])]
        prev = p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    nullity = ncols - len(pivots)
    if nullity != 1:
        return nullity, None
    free = next(c for c in range(ncols) if c not in pivots)
    v = [Fraction(0)] * ncols
    v[free] = Fraction(1)
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        s = sum(m[i][j] * v[j] for j in range(c + 1, ncols))
        v[c] = -Fraction(s) / m[i][c]
    den = math.lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints)
    return 1, [x // g for x in ints]
