"""Plane cubic forms: Hessian, classification, shear, and exceptional points.

Everything here is exact.  Algebraic x-coordinates are handled as
:class:`IsolatedRoot` values over Q, and the y-coordinates above them as
isolated roots of a fiber polynomial with coefficients in Q(x0).
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .errors import (
    CertificationFailure,
    InputParseError,
    NoGenericShear,
    NotACubic,
    NotIrreducible,
)
from .exact.bipoly import BiPoly, resultant_y
from .exact.field import RootField, interval_eval
from .exact.linalg import det, solve
from .exact.poly import (
    UniPoly,
    count_roots,
    poly_gcd,
    rational_roots,
    squarefree_part,
    sturm_sequence,
)
from .exact.roots import (
    Cmp,
    IsolatedRoot,
    compare_root_rational,
    compare_roots,
    refine,
    roots_equal,
    sign_at,
    sturm_isolate,
)
from .geometry import parse_rational

AlgReal = Union[Fraction, IsolatedRoot]

CUBIC_KEYS = {
    "X3": (3, 0, 0),
    "X2Y": (2, 1, 0),
    "X2Z": (2, 0, 1),
    "XY2": (1, 2, 0),
    "XYZ": (1, 1, 1),
    "XZ2": (1, 0, 2),
    "Y3": (0, 3, 0),
    "Y2Z": (0, 2, 1),
    "YZ2": (0, 1, 2),
    "Z3": (0, 0, 3),
}
CONIC_KEYS = {
    "X2": (2, 0, 0),
    "XY": (1, 1, 0),
    "XZ": (1, 0, 1),
    "Y2": (0, 2, 0),
    "YZ": (0, 1, 1),
    "Z2": (0, 0, 2),
}


# -- forms ----------------------------------------------------------------


class TernaryForm:
    """Homogeneous polynomial in X, Y, Z with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for k, v in (terms or {}).items():
            v = Fraction(v)
            if v != 0:
                clean[tuple(k)] = v
        degs = {sum(k) for k in clean}
        if len(degs) > 1:
            raise ValueError("form is not homogeneous")
        self.terms = clean

    @classmethod
    def var(cls, i: int) -> TernaryForm:
        e = [0, 0, 0]
        e[i] = 1
        return cls({tuple(e): 1})

    @property
    def degree(self) -> int:
        return sum(next(iter(self.terms))) if self.terms else -1

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = TernaryForm({(0, 0, 0): other})
        return isinstance(other, TernaryForm) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> TernaryForm:
        if isinstance(other, (int, Fraction)):
            other = TernaryForm({(0, 0, 0): other})
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return TernaryForm(t)

    __radd__ = __add__

    def __neg__(self) -> TernaryForm:
        return TernaryForm({k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> TernaryForm:
        return self + (-other)

    def __rsub__(self, other) -> TernaryForm:
        return (-self) + other

    def __mul__(self, other) -> TernaryForm:
        if isinstance(other, (int, Fraction)):
            return TernaryForm({k: v * other for k, v in self.terms.items()})
        t: dict = {}
        for k1, a in self.terms.items():
            for k2, b in other.terms.items():
                k = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2])
                t[k] = t.get(k, 0) + a * b
        return TernaryForm(t)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> TernaryForm:
        out = TernaryForm({(0, 0, 0): 1})
        for _ in range(e):
            out = out * self
        return out

    def diff(self, i: int) -> TernaryForm:
        t = {}
        for k, v in self.terms.items():
            if k[i]:
                kk = list(k)
                kk[i] -= 1
                t[tuple(kk)] = v * k[i]
        return TernaryForm(t)

    def __call__(self, X, Y, Z):
        acc = Fraction(0)
        for (i, j, k), v in self.terms.items():
            term = v
            if i:
                term = term * X**i
            if j:
                term = term * Y**j
            if k:
                term = term * Z**k
            acc = acc + term
        return acc

    def substitute(self, X, Y, Z) -> TernaryForm:
        """Compose with linear forms X, Y, Z."""
        out = self(X, Y, Z)
        return out if isinstance(out, TernaryForm) else TernaryForm({(0, 0, 0): out})

    def dehomogenize(self) -> BiPoly:
        """f(x, y) = F(x, y, 1)."""
        t: dict = {}
        for (i, j, _k), v in self.terms.items():
            t[(i, j)] = t.get((i, j), 0) + v
        return BiPoly(t)

    def scale_vars(self, a, b, c) -> TernaryForm:
        return TernaryForm(
            {k: v * Fraction(a) ** k[0] * Fraction(b) ** k[1] * Fraction(c) ** k[2] for k, v in self.terms.items()}
        )

    def is_proportional(self, other: TernaryForm) -> bool:
        if not self or not other:
            return not self and not other
        if set(self.terms) != set(other.terms):
            return False
        k0 = next(iter(self.terms))
        r = other.terms[k0] / self.terms[k0]
        return all(other.terms[k] == r * v for k, v in self.terms.items())

    def primitive(self) -> TernaryForm:
        if not self.terms:
            return self
        den = math.lcm(*(v.denominator for v in self.terms.values()))
        ints = {k: int(v * den) for k, v in self.terms.items()}
        g = math.gcd(*ints.values())
        return TernaryForm({k: Fraction(v, g) for k, v in ints.items()})

    def coeff(self, key) -> Fraction:
        return self.terms.get(tuple(key), Fraction(0))

    def to_json(self) -> dict:
        keys = CUBIC_KEYS if self.degree == 3 else CONIC_KEYS if self.degree == 2 else None
        if keys is None:
            return {"terms": [[list(k), str(v)] for k, v in sorted(self.terms.items())]}
        return {"coeffs": {name: str(self.coeff(k)) for name, k in keys.items()}}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        names = "XYZ"
        parts = []
        for k, v in sorted(self.terms.items(), reverse=True):
            mono = "".join(names[i] + (f"^{e}" if e > 1 else "") for i, e in enumerate(k) if e)
            parts.append(f"{v}" + ("*" + mono if mono else ""))
        return " + ".join(parts)


class HomogeneousCubic(TernaryForm):
    """A nonzero cubic form stored with primitive integer coefficients (sign kept)."""

    __slots__ = ()

    def __init__(self, terms=None):
        base = TernaryForm(terms)
        if not base:
            raise NotACubic("the zero form is not a cubic")
        if base.degree != 3:
            raise NotACubic(f"form has degree {base.degree}, expected 3")
        self.terms = base.primitive().terms

    @classmethod
    def from_form(cls, F: TernaryForm) -> HomogeneousCubic:
        return cls(F.terms)

    @classmethod
    def from_coeffs(cls, coeffs: dict) -> HomogeneousCubic:
        terms = {}
        for name, v in coeffs.items():
            if name not in CUBIC_KEYS:
                raise InputParseError(f"unknown cubic monomial {name!r}")
            terms[CUBIC_KEYS[name]] = parse_rational(v)
        return cls(terms)

    @classmethod
    def from_json(cls, d) -> HomogeneousCubic:
        if not isinstance(d, dict) or not isinstance(d.get("coeffs"), dict):
            raise InputParseError("cubic JSON needs a 'coeffs' object")
        return cls.from_coeffs(d["coeffs"])

    @classmethod
    def load(cls, path) -> HomogeneousCubic:
        try:
            with open(path, encoding="utf-8") as fh:
                return cls.from_json(json.load(fh))
        except json.JSONDecodeError as e:
            raise InputParseError(f"{path}: {e}") from e


X_, Y_, Z_ = TernaryForm.var(0), TernaryForm.var(1), TernaryForm.var(2)


def named_cubic(name: str) -> HomogeneousCubic:
    """A few standard curves by name."""
    X, Y, Z = X_, Y_, Z_
    table = {
        "weierstrass": Y * Y * Z - X**3 + X * Z * Z,  # y^2 = x^3 - x
        "cubic-power": Y * Z * Z - X**3,  # y = x^3
        "acnodal": Y * Y * Z - X * X * (X + Z),
        "crunodal": Y * Y * Z - X * X * (X - Z),
        "cuspidal": X**3 - Y * Y * Z,
    }
    if name not in table:
        raise KeyError(name)
    return HomogeneousCubic.from_form(table[name])


def hessian(F: TernaryForm) -> TernaryForm:
    """Determinant of the matrix of second partials, with its natural scalar.

    For a cubic the result is again a cubic form (or zero).  It is not
    rescaled; under a linear substitution M it transforms as
    hessian(F o M) = det(M)^2 * (hessian(F) o M).
    """
    d = [[F.diff(i).diff(j) for j in range(3)] for i in range(3)]
    return (
        d[0][0] * (d[1][1] * d[2][2] - d[1][2] * d[2][1])
        - d[0][1] * (d[1][0] * d[2][2] - d[1][2] * d[2][0])
        + d[0][2] * (d[1][0] * d[2][1] - d[1][1] * d[2][0])
    )


# -- classification -------------------------------------------------------


def _monomials(deg: int) -> list[tuple[int, int, int]]:
    return [(i, j, deg - i - j) for i in range(deg, -1, -1) for j in range(deg - i, -1, -1)]


def divide_by_linear(P: TernaryForm, L: TernaryForm) -> Optional[TernaryForm]:
    """Q with L * Q = P, or None."""
    d = P.degree
    mons = _monomials(d - 1)
    targets = _monomials(d)
    idx = {m: r for r, m in enumerate(targets)}
    rows = [[Fraction(0)] * len(mons) for _ in targets]
    for c, m in enumerate(mons):
        for k, v in L.terms.items():
            t = (m[0] + k[0], m[1] + k[1], m[2] + k[2])
            rows[idx[t]][c] += v
    rhs = [P.coeff(t) for t in targets]
    sol = solve(rows, rhs)
    if sol is None:
        return None
    Q = TernaryForm({m: v for m, v in zip(mons, sol)})
    return Q if L * Q == P else None


def _linear_factor(P: TernaryForm) -> Optional[tuple[TernaryForm, TernaryForm]]:
    """A rational linear factor of P and the cofactor, if any."""
    d = P.degree
    at_inf = TernaryForm({k: v for k, v in P.terms.items() if k[2] == 0})
    if not at_inf:
        return Z_, divide_by_linear(P, Z_)
    u = UniPoly.x()
    cands = []
    # b_u(u) = P(u, 1, 0); a root u gives the factor X - uY of P(X, Y, 0)
    b_u = at_inf(u, Fraction(1), Fraction(0))
    b_u = b_u if isinstance(b_u, UniPoly) else UniPoly([b_u])
    if b_u and b_u.degree > 0:
        cands += [(Fraction(1), -r) for r in rational_roots(b_u)]
    if at_inf.coeff((d, 0, 0)) == 0:
        cands.append((Fraction(0), Fraction(1)))
    samples = [(0, 1), (1, 1), (2, 1), (-1, 1), (3, 1)][: d + 1]
    for a, b in cands:
        polys = []
        for s0, z0 in samples:
            s0, z0 = Fraction(s0), Fraction(z0)
            if a:
                val = P(UniPoly([-b * s0, -z0]), s0, z0)  # X = -bY - cZ
            else:
                val = P(s0, UniPoly([0, -z0]), z0)  # Y = -cZ
            polys.append(val if isinstance(val, UniPoly) else UniPoly([val]))
        g = UniPoly()
        for p in polys:
            g = poly_gcd(g, p) if g else p.monic() if p else g
        if not g:
            continue
        for c in rational_roots(g) if g.degree > 0 else []:
            L = TernaryForm({(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})
            Q = divide_by_linear(P, L)
            if Q is not None:
                return L, Q
    return None


def _int_triple(L: TernaryForm) -> tuple[int, int, int]:
    L = L.primitive()
    a, b, c = (int(L.coeff(k)) for k in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    if a < 0 or (a == 0 and (b < 0 or (b == 0 and c < 0))):
        a, b, c = -a, -b, -c
    return a, b, c


def conic_matrix(Q: TernaryForm) -> list[list[Fraction]]:
    c = Q.coeff
    return [
        [c((2, 0, 0)), c((1, 1, 0)) / 2, c((1, 0, 1)) / 2],
        [c((1, 1, 0)) / 2, c((0, 2, 0)), c((0, 1, 1)) / 2],
        [c((1, 0, 1)) / 2, c((0, 1, 1)) / 2, c((0, 0, 2))],
    ]


@dataclass
class CubicClassification:
    tag: str  # Irreducible | LineConic | ThreeLines | Unclassified
    line: Optional[tuple] = None
    conic: Optional[TernaryForm] = None
    lines: list = field(default_factory=list)
    reason: str = ""
    scalar: Fraction = Fraction(1)

    def to_json(self) -> dict:
        d: dict = {"tag": self.tag}
        if self.tag == "LineConic":
            d["line"] = list(self.line)
            d["conic"] = self.conic.to_json()["coeffs"]
        if self.tag == "ThreeLines":
            d["lines"] = [list(t) for t in self.lines]
        if self.reason:
            d["reason"] = self.reason
        return d

    def product(self) -> Optional[TernaryForm]:
        def lin(t):
            return TernaryForm({(1, 0, 0): t[0], (0, 1, 0): t[1], (0, 0, 1): t[2]})

        if self.tag == "LineConic":
            return lin(self.line) * self.conic * self.scalar
        if self.tag == "ThreeLines":
            out = TernaryForm({(0, 0, 0): self.scalar})
            for t in self.lines:
                out = out * lin(t)
            return out
        return None


def classify(F: TernaryForm) -> CubicClassification:
    """Irreducible / LineConic / ThreeLines / Unclassified, using exact rational factoring.

    With no rational linear factor, a cubic splits over the reals only as
    three lines conjugate over a cubic field; that happens exactly when the
    Hessian vanishes or is proportional to F (every point a flex).
    """
    if F.degree != 3:
        raise NotACubic("classification needs a cubic form")
    factors = []
    rest: TernaryForm = F
    while rest.degree >= 1:
        found = _linear_factor(rest)
        if found is None:
            break
        L, rest = found
        factors.append(L)
    if not factors:
        H = hessian(F)
        if not H or H.is_proportional(F):
            return CubicClassification("Unclassified", reason="three lines conjugate over a cubic field")
        return CubicClassification("Irreducible")
    if len(factors) == 1:
        M = conic_matrix(rest)
        if det(M) == 0:
            minors = (
                M[0][0] * M[1][1] - M[0][1] ** 2
                + M[0][0] * M[2][2] - M[0][2] ** 2
                + M[1][1] * M[2][2] - M[1][2] ** 2
            )
            if minors < 0:
                return CubicClassification(
                    "Unclassified", reason="a rational line and two real lines conjugate over a quadratic field"
                )
        line = _int_triple(factors[0])
        Lp = TernaryForm({(1, 0, 0): line[0], (0, 1, 0): line[1], (0, 0, 1): line[2]})
        conic = rest.primitive()
        prod = Lp * conic
        k0 = next(iter(F.terms))
        out = CubicClassification("LineConic", line=line, conic=conic, scalar=F.terms[k0] / prod.terms[k0])
    else:
        lines = [_int_triple(L) for L in factors]
        prod = TernaryForm({(0, 0, 0): 1})
        for t in lines:
            prod = prod * TernaryForm({(1, 0, 0): t[0], (0, 1, 0): t[1], (0, 0, 1): t[2]})
        k0 = next(iter(F.terms))
        out = CubicClassification("ThreeLines", lines=lines, scalar=F.terms[k0] / prod.terms[k0])
    if out.product() != F:
        raise CertificationFailure("factorization does not reproduce the input form")
    return out


# -- chart ----------------------------------------------------------------


def shear_to_generic(F: TernaryForm) -> tuple[Fraction, TernaryForm]:
    """Smallest lambda in {0,1,2,3} with F(lambda, 1, 0) != 0 and F(X + lambda Y, Y, Z)."""
    if not F:
        raise NotACubic("zero form")
    for lam in range(4):
        if F(Fraction(lam), Fraction(1), Fraction(0)) != 0:
            G = F.substitute(X_ + Y_ * lam, Y_, Z_)
            if isinstance(F, HomogeneousCubic):
                G = HomogeneousCubic.from_form(G)
            return Fraction(lam), G
    raise NoGenericShear("F(l, 1, 0) vanishes for l = 0..3; Z divides F")


# -- algebraic reals ------------------------------------------------------


def alg_cmp(a: AlgReal, b: AlgReal) -> int:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return (a > b) - (a < b)
    if isinstance(a, Fraction):
        return -compare_root_rational(b, a).value
    if isinstance(b, Fraction):
        return compare_root_rational(a, b).value
    return compare_roots(a, b).value


def alg_float(a) -> float:
    if a is None:
        return float("nan")
    if isinstance(a, Fraction):
        return float(a)
    return a.approx()


def alg_json(a):
    if isinstance(a, Fraction):
        return str(a)
    return a.to_json()


def alg_bounds(a: AlgReal) -> tuple[Fraction, Fraction]:
    return (a, a) if isinstance(a, Fraction) else (a.lo, a.hi)


def _real_roots_split(p: UniPoly) -> list[AlgReal]:
    """Real roots with rational ones returned exactly as Fractions."""
    if not p or p.degree <= 0:
        return []
    out: list[AlgReal] = list(rational_roots(p))
    q = squarefree_part(p)
    for r in out:
        q = q.exact_div(UniPoly([-r, 1]))
    if q.degree > 0:
        out += sturm_isolate(q)
    return out


# -- exceptional points ---------------------------------------------------


@dataclass(eq=False)
class AlgebraicPoint:
    """A real point of the curve in chart coordinates, possibly at infinity."""

    kinds: set
    x: Optional[AlgReal] = None
    y: object = None  # Fraction or IsolatedRoot over Q(x)
    at_infinity: bool = False
    direction: Optional[tuple] = None
    cut: Optional[int] = None
    root: Optional[int] = None

    def approx(self) -> tuple[float, float]:
        if self.at_infinity:
            return (alg_float(self.direction[0]), alg_float(self.direction[1]))
        return (alg_float(self.x), alg_float(self.y))

    def to_json(self) -> dict:
        d: dict = {"kinds": sorted(self.kinds), "at_infinity": self.at_infinity}
        if self.at_infinity:
            d["direction"] = [alg_json(c) for c in self.direction] + ["0"]
        else:
            d["x"] = alg_json(self.x)
            d["y"] = str(self.y) if isinstance(self.y, Fraction) else {"approx": alg_float(self.y)}
        d["approx"] = list(self.approx())
        return d

    def box(self, width) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        """Rational box of side at most ``width`` around an affine point."""
        if self.at_infinity:
            raise ValueError("points at infinity have no affine box")
        xs = alg_bounds(refine(self.x, width) if isinstance(self.x, IsolatedRoot) else self.x)
        ys = alg_bounds(refine(self.y, width) if isinstance(self.y, IsolatedRoot) else self.y)
        return xs, ys


@dataclass
class Fiber:
    """Real points of the curve on the vertical line x = x0 (a cut)."""

    x: AlgReal
    field: Optional[RootField]
    poly: UniPoly  # f(x0, y), coefficients in Q or Q(x0)
    roots: list  # Fraction or IsolatedRoot, ascending
    points: list  # AlgebraicPoint or None per root


@dataclass
class ExceptionalSet:
    form: TernaryForm
    chart: str
    lam: Fraction
    chart_form: TernaryForm
    e_sing: list
    e_inf: list
    e_vt: list
    e_fl: list
    points: list  # distinct exceptional points
    cuts: list
    fibers: list

    @property
    def size(self) -> int:
        return len(self.points)

    def counts(self) -> dict:
        return {
            "sing": len(self.e_sing),
            "inf": len(self.e_inf),
            "vt": len(self.e_vt),
            "fl": len(self.e_fl),
            "total": self.size,
        }

    def to_json(self) -> dict:
        ids = {id(p): i for i, p in enumerate(self.points)}
        return {
            "chart": self.chart,
            "lambda": str(self.lam),
            "counts": self.counts(),
            "points": [p.to_json() for p in self.points],
            "e_sing": [ids[id(p)] for p in self.e_sing],
            "e_inf": [ids[id(p)] for p in self.e_inf],
            "e_vt": [ids[id(p)] for p in self.e_vt],
            "e_fl": [ids[id(p)] for p in self.e_fl],
            "cuts": [alg_json(c) for c in self.cuts],
        }


def _in_interval(r: IsolatedRoot, g: UniPoly) -> bool:
    """Does g vanish at the designated root of r?"""
    if not g:
        return True
    if g.degree <= 0:
        return False
    h = poly_gcd(r.poly, g)
    return h.degree > 0 and count_roots(sturm_sequence(h), r.lo, r.hi) > 0


def _vanishes(y, g: UniPoly) -> bool:
    if isinstance(y, Fraction):
        return g(y) == 0
    return _in_interval(y, g)


def _fiber_roots(phi: UniPoly, rational: bool) -> list:
    if rational:
        return _real_roots_split(phi)
    return sturm_isolate(phi) if phi.degree > 0 else []


def _build_fiber(x0: AlgReal, f: BiPoly, fx: BiPoly, h: BiPoly) -> tuple[Fiber, list[tuple[int, set]]]:
    if isinstance(x0, Fraction):
        K = None
        xv = x0
    else:
        K = RootField(x0)
        xv = K.gen()
    phi = f.at_x(xv)
    rational = K is None
    roots = _fiber_roots(phi, rational) if phi else []
    dphi = phi.derivative()
    psi = fx.at_x(xv)
    eta = h.at_x(xv)
    flagged = []
    for j, y in enumerate(roots):
        kinds = set()
        if _vanishes(y, dphi):
            kinds.add("vt")
            if _vanishes(y, psi):
                kinds.add("sing")
        if "sing" not in kinds and _vanishes(y, eta):
            kinds.add("fl")
        if kinds:
            flagged.append((j, kinds))
    return Fiber(x0, K, phi, roots, [None] * len(roots)), flagged


def chart_data(F: TernaryForm, chart: str) -> tuple[Fraction, TernaryForm]:
    if chart == "standard":
        return Fraction(0), F
    if chart == "sheared":
        return shear_to_generic(F)
    raise ValueError(f"unknown chart {chart!r}")


def _sorted_distinct(vals: list) -> list:
    out: list = []
    for v in vals:
        if isinstance(v, Fraction):
            if any(isinstance(w, Fraction) and w == v for w in out):
                continue
        elif any(isinstance(w, IsolatedRoot) and roots_equal(v, w) for w in out):
            continue
        out.append(v)
    return sorted(out, key=functools.cmp_to_key(alg_cmp))


def exceptional_set(F: TernaryForm, chart: str = "standard", check: bool = True) -> ExceptionalSet:
    """Singular points, points at infinity, vertical tangencies and flexes.

    Affine points live on vertical cut lines x = x0 where x0 runs over the
    real roots of Res_y(f, f_y), Res_y(f, h) and (in the standard chart) the
    leading y-coefficient of f.  Each kind is decided by exact gcd tests in
    Q(x0)[y].
    """
    if F.degree != 3:
        raise NotACubic("exceptional set needs a cubic form")
    if check:
        cl = classify(F)
        if cl.tag != "Irreducible":
            raise NotIrreducible(f"cubic classified as {cl.tag}")
    lam, G = chart_data(F, chart)
    f = G.dehomogenize()
    fx, fy = f.diff_x(), f.diff_y()
    H = hessian(G)
    h = H.dehomogenize()
    polys = [resultant_y(f, fy), resultant_y(f, h)]
    lc = f.y_coeffs()[-1]
    if lc.degree > 0:
        polys.append(lc)
    for p in polys[:2]:
        if not p:
            raise NotIrreducible("resultant vanishes identically")
    cut_vals: list = []
    for p in polys:
        cut_vals += _real_roots_split(p)
    cuts = _sorted_distinct(cut_vals)

    e_sing, e_inf, e_vt, e_fl, points = [], [], [], [], []
    fibers = []
    for i, c in enumerate(cuts):
        fib, flagged = _build_fiber(c, f, fx, h)
        for j, kinds in flagged:
            pt = AlgebraicPoint(kinds, x=c, y=fib.roots[j], cut=i, root=j)
            fib.points[j] = pt
            points.append(pt)
            if "sing" in kinds:
                e_sing.append(pt)
            if "vt" in kinds:
                e_vt.append(pt)
            if "fl" in kinds:
                e_fl.append(pt)
        fibers.append(fib)

    # points at infinity: real zeros of G(X, Y, 0)
    u = UniPoly.x()
    one, zero = Fraction(1), Fraction(0)
    b1 = G(one, u, zero)
    b1 = b1 if isinstance(b1, UniPoly) else UniPoly([b1])
    dirs: list = [(one, r) for r in _real_roots_split(b1)] if b1 else []
    if G(zero, one, zero) == 0:
        dirs.append((zero, one))
    grads = [G.diff(i) for i in range(3)]
    for d in dirs:
        kinds = {"inf"}
        if isinstance(d[1], Fraction):
            sing = all(g(d[0], d[1], zero) == 0 for g in grads)
        else:
            gu = [g(one, u, zero) for g in grads]
            sing = all(_in_interval(d[1], gp if isinstance(gp, UniPoly) else UniPoly([gp])) for gp in gu)
        if sing:
            kinds.add("sing")
        pt = AlgebraicPoint(kinds, at_infinity=True, direction=d)
        points.append(pt)
        e_inf.append(pt)
        if sing:
            e_sing.append(pt)

    E = ExceptionalSet(F, chart, lam, G, e_sing, e_inf, e_vt, e_fl, points, cuts, fibers)
    if check:
        limits = {"sing": 1, "inf": 3, "vt": 6, "fl": 3, "total": 13}
        for k, v in E.counts().items():
            if v > limits[k]:
                raise CertificationFailure(f"|e_{k}| = {v} exceeds {limits[k]}")
    return E


def certify_point_box(pt: AlgebraicPoint, f: BiPoly, width=Fraction(1, 1000)) -> bool:
    """Interval evaluation of f over the point's box contains zero."""
    (xl, xh), (yl, yh) = pt.box(width)
    lo = hi = Fraction(0)
    for (i, j), v in f.terms.items():
        ax = interval_eval([0] * i + [1], xl, xh)
        ay = interval_eval([0] * j + [1], yl, yh)
        prods = [a * b for a in ax for b in ay]
        tl, th = min(prods) * v, max(prods) * v
        lo, hi = lo + min(tl, th), hi + max(tl, th)
    return lo <= 0 <= hi


def to_chart(lam: Fraction, x, y) -> tuple[Fraction, Fraction]:
    """Original coordinates to chart coordinates (inverse of X -> X + lam Y)."""
    return Fraction(x) - lam * Fraction(y), Fraction(y)


def from_chart(lam: Fraction, x, y):
    return x + lam * y, y


__all__ = [
    "TernaryForm",
    "HomogeneousCubic",
    "CubicClassification",
    "AlgebraicPoint",
    "ExceptionalSet",
    "Fiber",
    "hessian",
    "classify",
    "shear_to_generic",
    "exceptional_set",
    "named_cubic",
    "conic_matrix",
    "divide_by_linear",
    "alg_cmp",
    "alg_float",
    "Cmp",
]
