from fractions import Fraction as Fr

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicvis.errors import BothConstantInY, ZeroPolynomial
from cubicvis.exact.bipoly import BiPoly, resultant_y
from cubicvis.exact.field import RootField, common_field
from cubicvis.exact.linalg import det, integer_kernel, nullspace, rank, solve
from cubicvis.exact.poly import (
    UniPoly,
    cauchy_bound,
    count_roots,
    poly_gcd,
    rational_roots,
    simplest_between,
    squarefree_decomposition,
    squarefree_part,
    sturm_sequence,
)
from cubicvis.exact.roots import (
    Cmp,
    IsolatedRoot,
    compare_root_rational,
    compare_roots,
    refine,
    roots_equal,
    sturm_isolate,
)

x = UniPoly.x()
sx, sy = sympy.symbols("x y")

small_ints = st.integers(-6, 6)
polys = st.lists(small_ints, min_size=1, max_size=7).map(UniPoly).filter(bool)


def to_sympy(p: UniPoly):
    return sum(sympy.Rational(c.numerator, c.denominator) * sx**i for i, c in enumerate(p.coeffs))


def bi_to_sympy(f: BiPoly):
    return sum(sympy.Rational(c.numerator, c.denominator) * sx**i * sy**j for (i, j), c in f.terms.items())


# -- isolation ------------------------------------------------------------


def test_isolate_cubic_roots():
    roots = sturm_isolate(x**3 - x)
    assert [compare_root_rational(r, v) for r, v in zip(roots, (-1, 0, 1))] == [Cmp.EQUAL] * 3
    assert all(r.multiplicity == 1 for r in roots)


def test_isolate_no_real_roots():
    assert sturm_isolate(x**2 + 1) == []


def test_isolate_zero_polynomial():
    with pytest.raises(ZeroPolynomial):
        sturm_isolate(UniPoly())


def test_isolate_multiplicities():
    p = (x - 1) ** 3 * (x + 2) ** 2 * (x**2 - 2)
    roots = sturm_isolate(p)
    assert [r.multiplicity for r in roots] == [2, 1, 3, 1]
    assert compare_root_rational(roots[0], -2) is Cmp.EQUAL


def test_flex_resultant_root_near_1_468():
    f = BiPoly({(0, 2): 1, (3, 0): -1, (1, 0): 1})  # y^2 - x^3 + x
    h = BiPoly({(1, 2): -3, (2, 0): 3, (0, 0): 1})  # 3x^2 - 3xy^2 + 1 vanishes with f at the flexes
    R = resultant_y(f, h)
    roots = [r for r in sturm_isolate(R)]
    assert any(Fr(146, 100) < refine(r, Fr(1, 10**6)).lo < Fr(147, 100) for r in roots)


@settings(max_examples=60, deadline=None)
@given(polys)
def test_isolation_matches_sympy(p):
    roots = sturm_isolate(p)
    real = sympy.Poly(to_sympy(p), sx).real_roots() if p.degree > 0 else []
    assert sum(r.multiplicity for r in roots) == len(real)
    assert len(roots) == len(set(real))
    for a, b in zip(roots, roots[1:]):
        assert a.hi <= b.lo
    B = cauchy_bound(p) if p.degree > 0 else Fr(1)
    seq = sturm_sequence(squarefree_part(p)) if p.degree > 0 else None
    if seq is not None:
        assert count_roots(seq, -B, B) == len(roots)


@settings(max_examples=60, deadline=None)
@given(polys, st.fractions(Fr(-5), Fr(5), max_denominator=20))
def test_compare_is_stable_under_refinement(p, q):
    for r in sturm_isolate(p):
        c = compare_root_rational(r, q)
        rr = refine(r, Fr(1, 1000))
        assert compare_root_rational(rr, q) == c
        assert rr.lo <= rr.hi and rr.hi - rr.lo <= Fr(1, 1000)
        v = sympy.nsimplify(q)
        real = sorted(sympy.Poly(to_sympy(p), sx).real_roots())
        idx = sturm_isolate(p).index(r)
        truth = real_sorted_distinct(real)[idx]
        assert c == (Cmp.LESS if truth < v else Cmp.EQUAL if truth == v else Cmp.GREATER)


def real_sorted_distinct(vals):
    out = []
    for v in vals:
        if not out or out[-1] != v:
            out.append(v)
    return out


def test_refine_examples():
    r = next(r for r in sturm_isolate(x**2 - 2) if r.lo >= 0)
    r2 = refine(r, Fr(1, 100))
    assert Fr(141, 100) <= r2.lo and r2.hi <= Fr(142, 100)
    assert refine(r2, Fr(10)) == r2
    zero = sturm_isolate(x**3 - x)[1]
    z = refine(zero, Fr(1, 8))
    assert z.lo < 0 <= z.hi and z.width <= Fr(1, 8)


def test_compare_examples():
    sqrt2 = next(r for r in sturm_isolate(x**2 - 2) if r.lo >= 0)
    assert compare_root_rational(sqrt2, Fr(3, 2)) is Cmp.LESS
    assert compare_root_rational(sturm_isolate(x - 5)[0], 5) is Cmp.EQUAL
    one = IsolatedRoot(x**3 - x, Fr(1, 2), Fr(2))
    assert compare_root_rational(one, 0) is Cmp.GREATER


def test_compare_roots_and_equality():
    a = sturm_isolate(x**2 - 2)[1]
    b = sturm_isolate(x**4 - 4)[1]
    c = sturm_isolate(x**2 - 3)[1]
    assert roots_equal(a, b)
    assert compare_roots(a, c) is Cmp.LESS
    assert compare_roots(c, a) is Cmp.GREATER


# -- polynomial helpers ---------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_gcd_divides_both(a, b):
    g = poly_gcd(a, b)
    assert not (a % g) and not (b % g)
    expect = sympy.gcd(to_sympy(a), to_sympy(b))
    assert sympy.Poly(expect, sx).degree() == g.degree


@settings(max_examples=60, deadline=None)
@given(polys)
def test_squarefree_decomposition_reassembles(p):
    if p.degree <= 0:
        return
    prod = UniPoly([p.lc])
    for f, m in squarefree_decomposition(p):
        prod = prod * f**m
    assert prod == p


def test_rational_roots_and_simplest():
    p = (2 * x - 1) * (3 * x + 4) * (x**2 + 1)
    assert rational_roots(p) == [Fr(-4, 3), Fr(1, 2)]
    assert simplest_between(Fr(1, 3), Fr(1, 2)) == Fr(2, 5)


# -- resultants -----------------------------------------------------------


def test_resultant_examples():
    f = BiPoly({(0, 2): 1, (3, 0): -1, (1, 0): 1})
    g = BiPoly({(0, 1): 2})
    assert resultant_y(f, g) == (x**3 - x).scale(-4)
    assert resultant_y(BiPoly({(0, 1): 1, (1, 0): -1}), BiPoly({(0, 1): 1, (1, 0): 1})) == 2 * x
    h = BiPoly({(0, 2): 1, (1, 0): -1})
    assert resultant_y(h, h) == UniPoly()


def test_resultant_needs_y():
    with pytest.raises(BothConstantInY):
        resultant_y(BiPoly({(1, 0): 1}), BiPoly({(2, 0): 1}))


bipolys = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-4, 4), min_size=1, max_size=5
).map(BiPoly)


@settings(max_examples=40, deadline=None)
@given(bipolys, bipolys)
def test_resultant_matches_sympy(f, g):
    if f.deg_y < 1 or g.deg_y < 1:
        return
    mine = resultant_y(f, g)
    ref = sympy.expand(sympy.resultant(bi_to_sympy(f), bi_to_sympy(g), sy))
    assert sympy.expand(to_sympy(mine) - ref) == 0


@settings(max_examples=20, deadline=None)
@given(st.lists(st.fractions(Fr(-3), Fr(3), max_denominator=7), min_size=50, max_size=50))
def test_resultant_vanishes_iff_common_root(probes):
    f = BiPoly({(0, 2): 1, (3, 0): -1, (1, 0): 1})
    g = BiPoly({(1, 2): -3, (2, 0): 3, (0, 0): 1})
    R = resultant_y(f, g)
    for x0 in probes:
        common = poly_gcd(f.at_x(x0), g.at_x(x0)).degree > 0
        assert (R(x0) == 0) == common


# -- algebraic number fields ----------------------------------------------


def test_root_field_arithmetic():
    r = sturm_isolate(x**2 - 2)[1]
    K = RootField(r)
    a = K.gen()
    assert a * a == 2
    assert (1 / (a + 1)) * (a + 1) == 1
    assert a > Fr(141, 100) and a < Fr(142, 100)
    assert abs(float(a) - 2**0.5) < 1e-12


def test_reducible_modulus_splits():
    # alpha = sqrt 2 given by a reducible polynomial
    p = (x**2 - 2) * (x - 5)
    r = sturm_isolate(p)[1]
    K = RootField(r)
    a = K.gen()
    assert (a * a - 2).is_zero()
    assert K.modulus.degree == 2


def test_common_field():
    a = sturm_isolate(x**2 - 2)[1]
    b = sturm_isolate(x**2 - 3)[0]
    K, ea, eb = common_field(a, b)
    assert ea * ea == 2 and eb * eb == 3
    assert eb < 0 < ea


# -- linear algebra -------------------------------------------------------


def test_linalg():
    A = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert det(A) == 0
    assert rank(A) == 2
    (v,) = nullspace(A)
    assert all(sum(Fr(a) * b for a, b in zip(row, v)) == 0 for row in A)
    assert solve([[1, 1], [1, -1]], [3, 1]) == [2, 1]
    assert solve([[1, 1], [1, 1]], [1, 2]) is None


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 6).flatmap(lambda r: st.lists(st.lists(st.integers(-3, 3), min_size=r + 1, max_size=r + 1), min_size=r, max_size=r)))
def test_integer_kernel_matches_rational_nullspace(rows):
    nullity, v = integer_kernel(rows)
    basis = nullspace(rows)
    assert nullity == len(basis)
    if nullity == 1:
        ratio = [Fr(a) for a in v]
        k = next(i for i, b in enumerate(basis[0]) if b != 0)
        assert [b * ratio[k] / basis[0][k] for b in basis[0]] == ratio
