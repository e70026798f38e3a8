"""Sturm-certified real algebraic numbers.

An :class:`IsolatedRoot` designates the unique real root of a square-free
polynomial in a half-open rational interval ``(lo, hi]``.  All comparisons
are exact: they are decided by signs of polynomials at rational points.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..errors import ZeroPolynomial
from .poly import (
    UniPoly,
    cauchy_bound,
    count_roots,
    poly_gcd,
    sign,
    squarefree_decomposition,
    squarefree_part,
    sturm_sequence,
)


class Cmp(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class IsolatedRoot:
    poly: UniPoly
    lo: Fraction
    hi: Fraction
    multiplicity: int = 1
    _seq: Optional[tuple] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("isolating interval must satisfy lo < hi")

    @property
    def seq(self) -> tuple:
        if self._seq is None:
            object.__setattr__(self, "_seq", tuple(sturm_sequence(self.poly)))
        return self._seq

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def _with(self, lo, hi) -> IsolatedRoot:
        return IsolatedRoot(self.poly, lo, hi, self.multiplicity, self._seq)

    def is_exact(self) -> bool:
        """True when the root sits on the right endpoint."""
        return self.poly(self.hi) == 0

    def rational_value(self) -> Optional[Fraction]:
        return self.hi if self.is_exact() else None

    def refine(self, width) -> IsolatedRoot:
        return refine(self, width)

    def bisect(self) -> IsolatedRoot:
        return refine(self, self.width / 2)

    def approx(self, digits: int = 12) -> float:
        if self.is_exact():
            return float(self.hi)
        r = refine(self, Fraction(1, 10**digits))
        return float((r.lo + r.hi) / 2)

    def to_json(self) -> dict:
        return {
            "root": {
                "poly": self.poly.to_json(),
                "lo": str(self.lo),
                "hi": str(self.hi),
                "multiplicity": self.multiplicity,
            },
            "approx": self.approx(9),
        }

    def __repr__(self) -> str:
        return f"IsolatedRoot(~{self.approx(6)}, ({self.lo}, {self.hi}], m={self.multiplicity})"


def sturm_isolate(p: UniPoly) -> list[IsolatedRoot]:
    """Isolating intervals for every distinct real root of ``p``, ascending."""
    if not p:
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    if p.degree <= 0:
        return []
    q = squarefree_part(p)
    factors = [(f, m, sturm_sequence(f)) for f, m in squarefree_decomposition(p)]
    seq = sturm_sequence(q)
    b = cauchy_bound(q)
    stack = [(-b, b, count_roots(seq, -b, b))]
    found = []
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            found.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        n_left = count_roots(seq, lo, mid)
        stack.append((mid, hi, n - n_left))
        stack.append((lo, mid, n_left))
    found.sort()
    out = []
    tseq = tuple(seq)
    for lo, hi in found:
        mult = 1
        for f, m, fseq in factors:
            if count_roots(fseq, lo, hi) > 0:
                mult = m
                break
        out.append(IsolatedRoot(q, lo, hi, mult, tseq))
    return out


def real_roots(p: UniPoly) -> list[IsolatedRoot]:
    return sturm_isolate(p)


def refine(r: IsolatedRoot, width) -> IsolatedRoot:
    """Shrink the interval to width at most ``width``; same designated root."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    lo, hi = r.lo, r.hi
    if hi - lo <= width:
        return r
    p = r.poly
    s_hi = sign(p(hi))
    while hi - lo > width:
        if s_hi == 0:
            lo = max(lo, hi - width)
            break
        mid = (lo + hi) / 2
        s_mid = sign(p(mid))
        if s_mid == 0:
            lo, hi, s_hi = lo, mid, 0
        elif s_mid == s_hi:
            hi = mid
        else:
            lo = mid
    return r._with(lo, hi)


def compare_root_rational(r: IsolatedRoot, q) -> Cmp:
    """Exact ordering of the designated root against the rational ``q``."""
    q = Fraction(q)
    if q <= r.lo:
        return Cmp.GREATER
    p = r.poly
    s_hi = sign(p(r.hi))
    if q >= r.hi:
        if q == r.hi and s_hi == 0:
            return Cmp.EQUAL
        return Cmp.LESS
    s_q = sign(p(q))
    if s_q == 0:
        return Cmp.EQUAL
    if s_hi == 0:
        return Cmp.GREATER
    return Cmp.LESS if s_q == s_hi else Cmp.GREATER


def roots_equal(a: IsolatedRoot, b: IsolatedRoot) -> bool:
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo >= hi:
        return False
    g = poly_gcd(a.poly, b.poly)
    if g.degree <= 0:
        return False
    return count_roots(sturm_sequence(g), lo, hi) > 0


def compare_roots(a: IsolatedRoot, b: IsolatedRoot) -> Cmp:
    """Exact ordering of two algebraic reals."""
    if roots_equal(a, b):
        return Cmp.EQUAL
    while True:
        if a.hi <= b.lo:
            return Cmp.LESS
        if b.hi <= a.lo:
            return Cmp.GREATER
        a = refine(a, a.width / 2)
        b = refine(b, b.width / 2)


def sign_at(r: IsolatedRoot, g: UniPoly) -> int:
    """Exact sign of ``g`` at the designated root of ``r``."""
    if not g:
        return 0
    if g.degree == 0:
        return sign(g.lc)
    h = poly_gcd(r.poly, g)
    if h.degree > 0 and count_roots(sturm_sequence(h), r.lo, r.hi) > 0:
        return 0
    gseq = sturm_sequence(squarefree_part(g))
    while count_roots(gseq, r.lo, r.hi) > 0:
        r = refine(r, r.width / 2)
    return sign(g(r.hi))


def separating_rational(a: IsolatedRoot, b: IsolatedRoot) -> Fraction:
    """A rational strictly between two distinct roots with ``a < b``."""
    from .poly import simplest_between

    while a.hi > b.lo or a.hi == b.lo and a.is_exact():
        a = refine(a, a.width / 2)
        b = refine(b, b.width / 2)
    if a.hi < b.lo:
        return simplest_between(a.hi, b.lo)
    return a.hi
