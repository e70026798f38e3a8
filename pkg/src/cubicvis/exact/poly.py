"""Dense univariate polynomials over an exact field.

Coefficients are usually ``Fraction``.  Any other exact field element works
as long as it supports ``+ - * /``, compares equal to ``0`` exactly, and
exposes ``sign()`` and ``abs_bound()`` (see :mod:`cubicvis.exact.field`).
That is how the same Sturm machinery runs over ``Q(alpha)``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import ZeroPolynomial

_ONE = Fraction(1)
_ZERO = Fraction(0)


def sign(c) -> int:
    if isinstance(c, (int, Fraction)):
        return (c > 0) - (c < 0)
    return c.sign()


def abs_bound(c) -> Fraction:
    """A rational upper bound for ``|c|``."""
    if isinstance(c, (int, Fraction)):
        return abs(Fraction(c))
    return c.abs_bound()


def _coerce(c):
    return Fraction(c) if isinstance(c, int) else c


class UniPoly:
    """Immutable polynomial; ``coeffs[i]`` multiplies ``x**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> UniPoly:
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> UniPoly:
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> UniPoly:
        p = cls([1])
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    # -- basic structure ------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else _ZERO

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "UniPoly(0)"
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(f"({c})" + (f"*{mono}" if mono else ""))
        return "UniPoly(" + " + ".join(terms) + ")"

    # -- arithmetic -----------------------------------------------------

    def _lift(self, other) -> UniPoly:
        return other if isinstance(other, UniPoly) else UniPoly([other])

    def __add__(self, other) -> UniPoly:
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out)

    __radd__ = __add__

    def __neg__(self) -> UniPoly:
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> UniPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> UniPoly:
        return self._lift(other) - self

    def __mul__(self, other) -> UniPoly:
        if not isinstance(other, UniPoly):
            if other == 0:
                return UniPoly()
            return UniPoly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    def __rmul__(self, other) -> UniPoly:
        return self * other

    def __pow__(self, e: int) -> UniPoly:
        if e < 0:
            raise ValueError("negative power")
        result, base = UniPoly([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other) -> tuple[UniPoly, UniPoly]:
        other = self._lift(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        m = other.degree
        if len(r) - 1 < m:
            return UniPoly(), self
        q = [_ZERO] * (len(r) - m)
        lc = other.coeffs[-1]
        for k in range(len(r) - 1 - m, -1, -1):
            c = r[k + m]
            if c == 0:
                continue
            t = c / lc
            q[k] = t
            for j, b in enumerate(other.coeffs):
                r[k + j] = r[k + j] - t * b
            r[k + m] = _ZERO
        return UniPoly(q), UniPoly(r[:m])

    def __floordiv__(self, other) -> UniPoly:
        return divmod(self, other)[0]

    def __mod__(self, other) -> UniPoly:
        return divmod(self, other)[1]

    def exact_div(self, other) -> UniPoly:
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("division is not exact")
        return q

    def __call__(self, x):
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> UniPoly:
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def scale(self, c) -> UniPoly:
        return UniPoly([a * c for a in self.coeffs])

    def monic(self) -> UniPoly:
        if not self.coeffs:
            return self
        inv = _ONE / self.coeffs[-1]
        return UniPoly([c * inv for c in self.coeffs])

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs)

    def integer_coeffs(self) -> list[int]:
        """Primitive integer multiple (positive leading coefficient)."""
        if not self.coeffs:
            return []
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return [v // g for v in ints]

    def primitive(self) -> UniPoly:
        return UniPoly(self.integer_coeffs())

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def compose(self, other: UniPoly) -> UniPoly:
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc


# -- gcd and square-free decomposition ------------------------------------


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero only when both inputs are zero)."""
    while b:
        a, b = b, a % b
        if b:
            b = b.monic()
    return a.monic()


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: ``p = lc * prod(f_i ** i)`` with the ``f_i`` monic."""
    if not p:
        raise ZeroPolynomial("square-free decomposition of the zero polynomial")
    if p.degree == 0:
        return []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a.monic(), i))
        i += 1
    return out


def squarefree_part(p: UniPoly) -> UniPoly:
    if not p:
        raise ZeroPolynomial("square-free part of the zero polynomial")
    if p.degree <= 0:
        return UniPoly([1])
    return p.exact_div(poly_gcd(p, p.derivative())).monic()


# -- Sturm sequences ------------------------------------------------------


def _normalized(p: UniPoly) -> UniPoly:
    lc = p.lc
    s = sign(lc)
    return p.scale(s / lc) if not isinstance(lc, Fraction) else p.scale(Fraction(s) / lc)


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    """Sturm chain of ``p``; every member is rescaled to leading coefficient +-1."""
    if not p:
        raise ZeroPolynomial("Sturm sequence of the zero polynomial")
    seq = [_normalized(p)]
    if p.degree == 0:
        return seq
    seq.append(_normalized(p.derivative()))
    while True:
        r = seq[-2] % seq[-1]
        if not r:
            break
        seq.append(_normalized(-r))
    return seq


def _sign_at(p: UniPoly, x) -> int:
    if x == "+inf":
        return sign(p.lc)
    if x == "-inf":
        return sign(p.lc) * (-1 if p.degree % 2 else 1)
    return sign(p(x))


def sign_variations(seq: Sequence[UniPoly], x) -> int:
    """Sign changes of ``seq`` at ``x`` (a Fraction, ``'-inf'`` or ``'+inf'``)."""
    count, last = 0, 0
    for p in seq:
        s = _sign_at(p, x)
        if s == 0:
            continue
        if last and s != last:
            count += 1
        last = s
    return count


def count_roots(seq: Sequence[UniPoly], lo, hi) -> int:
    """Distinct real roots in ``(lo, hi]`` for a square-free Sturm chain."""
    return sign_variations(seq, lo) - sign_variations(seq, hi)


def cauchy_bound(p: UniPoly) -> Fraction:
    """All roots of ``p`` lie in the open interval ``(-B, B)``."""
    lc = p.lc
    m = _ZERO
    for c in p.coeffs[:-1]:
        if c == 0:
            continue
        m = max(m, abs_bound(c / lc))
    return 1 + m


# -- rational helpers -----------------------------------------------------


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with smallest denominator in the open interval ``(lo, hi)``."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError("empty interval")
    if lo < 0 < hi:
        return _ZERO
    if hi <= 0:
        return -_simplest_open(-hi, -lo)
    return _simplest_open(lo, hi)


def _simplest_open(x: Fraction, y: Fraction) -> Fraction:
    k = math.floor(x)
    if k + 1 < y:
        return Fraction(k + 1)
    if x == k:
        return k + Fraction(1, math.floor(1 / (y - k)) + 1)
    return k + 1 / _simplest_open(1 / (y - k), 1 / (x - k))


def rational_roots(p: UniPoly) -> list[Fraction]:
    """All rational roots of a rational polynomial, ascending."""
    from .roots import sturm_isolate

    if not p:
        raise ZeroPolynomial("rational roots of the zero polynomial")
    if p.degree <= 0:
        return []
    q = squarefree_part(p)
    lead = abs(q.integer_coeffs()[-1])
    width = Fraction(1, 4 * lead * lead)
    out = []
    for r in sturm_isolate(q):
        if q(r.hi) == 0:
            out.append(r.hi)
            continue
        r = r.refine(width)
        cand = ((r.lo + r.hi) / 2).limit_denominator(lead)
        if r.lo < cand <= r.hi and q(cand) == 0:
            out.append(cand)
    return out
