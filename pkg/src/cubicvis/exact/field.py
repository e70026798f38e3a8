"""Arithmetic in Q(alpha) for a real algebraic number alpha.

Elements are residues of rational polynomials modulo a defining polynomial
of alpha.  The defining polynomial need not be irreducible: whenever a zero
test meets a nontrivial gcd with the modulus, the modulus is replaced by the
factor that actually vanishes at alpha (dynamic evaluation).  This keeps all
operations exact without polynomial factorization.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import UniPoly, count_roots, poly_gcd, sturm_sequence
from .roots import IsolatedRoot, refine


def interval_eval(coeffs, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of a rational polynomial's range over ``[lo, hi]`` by interval Horner."""
    a, b = Fraction(0), Fraction(0)
    for c in reversed(coeffs):
        prods = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(prods) + c, max(prods) + c
    return a, b


class RootField:
    """The field Q(alpha) where alpha is the designated root of ``root``."""

    def __init__(self, root: IsolatedRoot):
        if not root.poly.is_rational():
            raise TypeError("RootField needs a rational defining polynomial")
        self.root = root
        self.modulus = root.poly.monic()

    @property
    def degree(self) -> int:
        return self.modulus.degree

    def _split(self, g: UniPoly) -> bool:
        """Shrink the modulus using a proper factor ``g``; True if alpha is a root of ``g``."""
        r = self.root
        if count_roots(sturm_sequence(g), r.lo, r.hi) > 0:
            self.modulus = g.monic()
        else:
            self.modulus = self.modulus.exact_div(g).monic()
        self.root = IsolatedRoot(self.modulus, r.lo, r.hi, r.multiplicity)
        return self.modulus == g.monic()

    def reduce(self, u: UniPoly) -> UniPoly:
        return u % self.modulus if u.degree >= self.modulus.degree else u

    def is_zero(self, u: UniPoly) -> bool:
        u = self.reduce(u)
        if not u:
            return True
        if u.degree == 0:
            return False
        g = poly_gcd(u, self.modulus)
        if g.degree == 0:
            return False
        if self._split(g):
            return True
        return False

    def sign(self, u: UniPoly) -> int:
        if self.is_zero(u):
            return 0
        u = self.reduce(u)
        if u.degree == 0:
            c = u.lc
            return (c > 0) - (c < 0)
        while True:
            lo, hi = interval_eval(u.coeffs, self.root.lo, self.root.hi)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            self.root = refine(self.root, self.root.width / 2)

    def abs_bound(self, u: UniPoly) -> Fraction:
        u = self.reduce(u)
        lo, hi = interval_eval(u.coeffs, self.root.lo, self.root.hi)
        return max(abs(lo), abs(hi))

    def inverse(self, u: UniPoly) -> UniPoly:
        if self.is_zero(u):
            raise ZeroDivisionError("division by zero in Q(alpha)")
        u = self.reduce(u)
        # extended Euclid: s*u + t*m = gcd = 1
        r0, r1 = self.modulus, u
        s0, s1 = UniPoly(), UniPoly([1])
        while r1:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        return self.reduce(s0.scale(Fraction(1) / r0.lc))

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, UniPoly):
            return FieldElement(self, value)
        return FieldElement(self, UniPoly([value]))

    def gen(self) -> FieldElement:
        return FieldElement(self, UniPoly.x())

    def approx(self) -> float:
        return self.root.approx()


class FieldElement:
    __slots__ = ("field", "poly")
    __hash__ = None

    def __init__(self, field: RootField, poly: UniPoly):
        self.field = field
        self.poly = poly

    def _coerce(self, other) -> UniPoly:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise TypeError("elements of different fields")
            return other.poly
        if isinstance(other, (int, Fraction)):
            return UniPoly([other])
        return NotImplemented

    def _wrap(self, poly: UniPoly) -> FieldElement:
        return FieldElement(self.field, self.field.reduce(poly))

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.poly + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.poly - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(o - self.poly)

    def __neg__(self):
        return FieldElement(self.field, -self.poly)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.poly * o)

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inverse(self.poly))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, self.poly.scale(Fraction(1) / Fraction(other)))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * FieldElement(self.field, o).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, o) * self.inverse()

    def __pow__(self, e: int):
        out = self.field(1)
        for _ in range(e):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return self.field.is_zero(self.poly)

    def sign(self) -> int:
        return self.field.sign(self.poly)

    def abs_bound(self) -> Fraction:
        return self.field.abs_bound(self.poly)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.field.is_zero(self.poly - o)

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def rational_value(self):
        """The value as a Fraction when it reduces to a constant, else None."""
        u = self.field.reduce(self.poly)
        if u.degree <= 0:
            return u[0]
        if self.field.degree == 1:
            return self.field.reduce(u)[0]
        return None

    def __float__(self) -> float:
        f = self.field
        r = refine(f.root, Fraction(1, 10**15))
        lo, hi = interval_eval(f.reduce(self.poly).coeffs, r.lo, r.hi)
        return float((lo + hi) / 2)

    def __repr__(self) -> str:
        return f"FieldElement(~{float(self):.6g})"


def common_field(a: IsolatedRoot, b: IsolatedRoot, max_k: int = 8):
    """A field Q(gamma) containing both roots, by the primitive element gamma = a + k b.

    Returns (K, a_in_K, b_in_K).
    """
    from .bipoly import BiPoly, resultant_y
    from .poly import squarefree_part

    pa = a.poly
    if not (pa.is_rational() and b.poly.is_rational()):
        raise TypeError("common_field needs roots of rational polynomials")
    for k in range(1, max_k + 1):
        # w = k b is a root of pb(w / k)
        pw = UniPoly([c / Fraction(k) ** i for i, c in enumerate(b.poly.coeffs)])
        A = BiPoly({(0, i): c for i, c in enumerate(pa.coeffs)})
        diff = BiPoly({(1, 0): 1, (0, 1): -1})
        W = BiPoly()
        for i, c in enumerate(pw.coeffs):
            W = W + diff**i * c
        R = squarefree_part(resultant_y(A, W))
        seq = sturm_sequence(R)
        ra, rb = a, b
        while True:
            lo, hi = ra.lo + k * rb.lo, ra.hi + k * rb.hi
            if count_roots(seq, lo, hi) == 1:
                break
            ra = refine(ra, ra.width / 2)
            rb = refine(rb, rb.width / 2)
        K = RootField(IsolatedRoot(R, lo, hi))
        g_ = K.gen()
        shifted = pw.compose(UniPoly([g_, Fraction(-1)]))
        pa_k = UniPoly([K(c) for c in pa.coeffs])
        h = poly_gcd(pa_k, shifted)
        if h.degree == 1:
            ea = -h.coeffs[0] / h.coeffs[1]
            eb = (g_ - ea) / Fraction(k)
            return K, ea, eb
    raise ArithmeticError("no primitive element found")
