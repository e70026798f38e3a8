import random
from fractions import Fraction as Fr

import pytest

from cubicvis.cubic import exceptional_set, named_cubic
from cubicvis.errors import PointsNotOnPatch, UnknownPatch
from cubicvis.exact.roots import sturm_isolate
from cubicvis.geometry import Point
from cubicvis.patches import (
    PATCH_LIMIT,
    ExceptionalPointId,
    NotOnCurve,
    PatchId,
    assign_curve_point,
    assign_point,
    certify_patch_chord,
    chord_interior_count_algebraic,
    chord_interior_roots,
    decompose,
    decompose_with_fallback,
    random_patch_point,
)

EXPECTED = {
    ("weierstrass", "standard"): 6,
    ("weierstrass", "sheared"): 5,
    ("cubic-power", "standard"): 2,
    ("cubic-power", "sheared"): 4,
    ("acnodal", "standard"): 4,
    ("crunodal", "standard"): 4,
    ("cuspidal", "standard"): 2,
}


def build(name, chart="standard"):
    F = named_cubic(name)
    return decompose(F, exceptional_set(F, chart))


@pytest.mark.parametrize("key", sorted(EXPECTED))
def test_patch_counts(key):
    D = build(*key)
    assert D.patch_count == EXPECTED[key]
    cells = {c for p in D.patches for c in p.cells}
    assert len(cells) == D.cell_count
    assert all(D.cell_patch[c] == p.id for p in D.patches for c in p.cells)


@pytest.mark.parametrize("name", ["weierstrass", "cubic-power", "acnodal", "crunodal", "cuspidal"])
def test_sheared_chart_respects_limit(name):
    assert build(name, "sheared").patch_count <= PATCH_LIMIT


def test_fallback_keeps_small_standard_chart():
    D, notes = decompose_with_fallback(named_cubic("weierstrass"))
    assert D.patch_count == 6 and not notes


def test_assign_rational_points():
    D = build("cubic-power")
    assert assign_point(D, Point(0, 0)) == ExceptionalPointId(0)
    assert assign_point(D, Point(1, 2)) == NotOnCurve()
    left, right = assign_point(D, Point(-2, -8)), assign_point(D, Point(2, 8))
    assert isinstance(left, PatchId) and isinstance(right, PatchId) and left != right
    assert assign_point(D, Point(1, 1)) == right


def test_assign_algebraic_points():
    D = build("weierstrass")
    f = D.f
    upper = sturm_isolate(f.at_x(Fr(2)))[1]
    lower = sturm_isolate(f.at_x(Fr(2)))[0]
    a, b = assign_curve_point(D, Fr(2), upper), assign_curve_point(D, Fr(2), lower)
    assert a != b
    # the oval between -1 and 0 is split at its vertical tangencies only
    top = sturm_isolate(f.at_x(Fr(-1, 2)))[1]
    bottom = sturm_isolate(f.at_x(Fr(-1, 2)))[0]
    assert assign_curve_point(D, Fr(-1, 2), top) != assign_curve_point(D, Fr(-1, 2), bottom)


def test_chord_certificates():
    D = build("cubic-power")
    pid = assign_point(D, Point(1, 1)).id
    cert = certify_patch_chord(D, pid, Point(1, 1), Point(2, 8))
    assert cert.passed
    with pytest.raises(PointsNotOnPatch):
        certify_patch_chord(D, pid, Point(-1, -1), Point(2, 8))
    with pytest.raises(UnknownPatch):
        certify_patch_chord(D, 99, Point(1, 1), Point(2, 8))
    # across the flex the chord meets the curve again at t = -1
    assert len(chord_interior_roots(D.form, Point(-2, -8), Point(3, 27))) == 1


@pytest.mark.parametrize("name", ["cubic-power", "weierstrass", "crunodal", "acnodal"])
def test_random_chords_stay_off_curve(name):
    D = build(name)
    rng = random.Random(11)
    for _ in range(25):
        pid = rng.randrange(D.patch_count)
        p, q = random_patch_point(D, pid, rng), random_patch_point(D, pid, rng)
        if p == q:
            continue
        assert certify_patch_chord(D, pid, p, q).passed


def test_cells_across_patches_see_the_curve():
    # a chord between different branches over the same slab crosses the curve
    D = build("crunodal")
    rng = random.Random(3)
    hits = 0
    for _ in range(20):
        a, b = rng.sample(range(D.patch_count), 2)
        p, q = random_patch_point(D, a, rng), random_patch_point(D, b, rng)
        n = chord_interior_count_algebraic(D.form, p, q)
        hits += bool(n)
    assert hits > 0

