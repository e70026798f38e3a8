"""Bivariate polynomials over Q and resultants in y."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from ..errors import BothConstantInY
from .poly import UniPoly


class BiPoly:
    """Sparse polynomial in (x, y); ``terms[(i, j)]`` multiplies ``x**i * y**j``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        clean = {}
        for k, v in (terms or {}).items():
            v = Fraction(v)
            if v != 0:
                clean[k] = v
        self.terms = clean

    @classmethod
    def x(cls) -> BiPoly:
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> BiPoly:
        return cls({(0, 1): 1})

    @classmethod
    def constant(cls, c) -> BiPoly:
        return cls({(0, 0): c})

    @classmethod
    def from_y_coeffs(cls, coeffs) -> BiPoly:
        terms = {}
        for j, c in enumerate(coeffs):
            for i, a in enumerate(c.coeffs):
                terms[(i, j)] = a
        return cls(terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = BiPoly.constant(other)
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "BiPoly(0)"
        parts = [f"({v})*x^{i}*y^{j}" for (i, j), v in sorted(self.terms.items(), reverse=True)]
        return "BiPoly(" + " + ".join(parts) + ")"

    @property
    def deg_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    @property
    def deg_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def _lift(self, other) -> BiPoly:
        return other if isinstance(other, BiPoly) else BiPoly.constant(other)

    def __add__(self, other) -> BiPoly:
        other = self._lift(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return BiPoly(t)

    __radd__ = __add__

    def __neg__(self) -> BiPoly:
        return BiPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> BiPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> BiPoly:
        return self._lift(other) - self

    def __mul__(self, other) -> BiPoly:
        other = self._lift(other)
        t: dict = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                k = (i1 + i2, j1 + j2)
                t[k] = t.get(k, 0) + a * b
        return BiPoly(t)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> BiPoly:
        out = BiPoly.constant(1)
        for _ in range(e):
            out = out * self
        return out

    def diff_x(self) -> BiPoly:
        return BiPoly({(i - 1, j): i * v for (i, j), v in self.terms.items() if i})

    def diff_y(self) -> BiPoly:
        return BiPoly({(i, j - 1): j * v for (i, j), v in self.terms.items() if j})

    def __call__(self, x, y):
        acc = Fraction(0)
        for (i, j), v in self.terms.items():
            acc = acc + v * (x**i) * (y**j) if i or j else acc + v
        return acc

    def y_coeffs(self) -> list[UniPoly]:
        """Coefficients of ``y**j`` as polynomials in x, ascending in j."""
        n = self.deg_y + 1
        cols: list[dict] = [dict() for _ in range(n)]
        for (i, j), v in self.terms.items():
            cols[j][i] = v
        out = []
        for c in cols:
            d = max(c, default=-1)
            out.append(UniPoly([c.get(i, 0) for i in range(d + 1)]))
        return out

    def at_x(self, x0) -> UniPoly:
        """Specialize x; the result is a polynomial in y (coefficients may be algebraic)."""
        return UniPoly([c(x0) for c in self.y_coeffs()])

    def at_y(self, y0) -> UniPoly:
        n = self.deg_x + 1
        coeffs = [Fraction(0)] * max(n, 0)
        for (i, j), v in self.terms.items():
            coeffs[i] = coeffs[i] + v * (y0**j) if j else coeffs[i] + v
        return UniPoly(coeffs)

    def on_line(self, p, q) -> UniPoly:
        """``t -> self(p + t (q - p))`` for rational points given as pairs."""
        px, py = Fraction(p[0]), Fraction(p[1])
        dx, dy = Fraction(q[0]) - px, Fraction(q[1]) - py
        X = UniPoly([px, dx])
        Y = UniPoly([py, dy])
        out = UniPoly()
        for (i, j), v in self.terms.items():
            out = out + (X**i) * (Y**j) * v
        return out


def _prem(a: list[UniPoly], b: list[UniPoly]) -> list[UniPoly]:
    """Pseudo-remainder of polynomials in y with coefficients in Q[x]."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for j, c in enumerate(b):
            r[j + shift] = r[j + shift] - lr * c
        r.pop()
        e -= 1
        while r and not r[-1]:
            r.pop()
    if e > 0:
        f = lb**e
        r = [c * f for c in r]
    return r


def resultant_y(f: BiPoly, g: BiPoly) -> UniPoly:
    """Res_y(f, g) by the subresultant PRS.

    The sign matches the Sylvester determinant with f's rows first, so
    Res(y^2 - c, 2y) = -4c and Res(y - x, y + x) = 2x.
    """
    a, b = f.y_coeffs(), g.y_coeffs()
    if len(a) <= 1 and len(b) <= 1:
        raise BothConstantInY("both polynomials are constant in y")
    if not a or not b:
        return UniPoly()
    s = 1
    if len(a) < len(b):
        if (len(a) - 1) * (len(b) - 1) % 2:
            s = -1
        a, b = b, a
    if len(b) == 1:
        return (b[0] ** (len(a) - 1)).scale(s)
    g_ = UniPoly([1])
    h = UniPoly([1])
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        r = _prem(a, b)
        if not r:
            return UniPoly()
        if da % 2 and db % 2:
            s = -s
        div = g_ * h**delta
        a, b = b, [c.exact_div(div) for c in r]
        g_ = a[-1]
        if delta:
            h = (g_**delta).exact_div(h ** (delta - 1)) if delta > 1 else g_
        if len(b) == 1:
            break
    da = len(a) - 1
    h = (b[0] ** da).exact_div(h ** (da - 1)) if da > 1 else b[0]
    return h.scale(s)
