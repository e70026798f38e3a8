"""Constructors for structured and random rational point sets."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import HeightCapExceeded, InvalidM, RetriesExhausted, SingularCurve, TorsionCollision
from .geometry import Point, PointSet, orient

HEIGHT_CAP = 50


def gen_one_blocker(m: int) -> PointSet:
    """m/2 antipodal pairs of rational unit-circle points, then the origin (last)."""
    if not isinstance(m, int) or m < 2 or m % 2:
        raise InvalidM(f"m must be an even integer >= 2, got {m!r}")
    pts = []
    for t in range(1, m // 2 + 1):
        d = 1 + t * t
        p = Point(Fraction(1 - t * t, d), Fraction(2 * t, d))
        pts.append(p)
        pts.append(Point(-p.x, -p.y))
    pts.append(Point(0, 0))
    return PointSet(tuple(pts), f"one-blocker m={m}")


def gen_cubic_power(m: int) -> PointSet:
    """Integer points (t, t^3) for -m <= t <= m."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return PointSet(tuple(Point(t, t**3) for t in range(-m, m + 1)), f"cubic-power m={m}")


# -- elliptic curves ------------------------------------------------------


def _on_curve(a, b, P) -> bool:
    x, y = P
    return y * y == x**3 + a * x + b


def ec_add(a, P, Q):
    """Chord-tangent addition on y^2 = x^3 + a x + b; None is the point at infinity."""
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2:
        if y1 != y2 or y1 == 0:
            return None
        lam = (3 * x1 * x1 + a) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    y3 = lam * (x1 - x3) - y1
    return (x3, y3)


def gen_elliptic_coset(a, b, P, n: int, height_cap: int = HEIGHT_CAP) -> PointSet:
    """The multiples P, 2P, ..., nP on y^2 = x^3 + a x + b."""
    a, b = Fraction(a), Fraction(b)
    P = (Fraction(P[0]), Fraction(P[1]))
    if 4 * a**3 + 27 * b**2 == 0:
        raise SingularCurve("4a^3 + 27b^2 = 0")
    if not _on_curve(a, b, P):
        raise ValueError(f"{P} is not on the curve")
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > height_cap:
        raise HeightCapExceeded(f"n = {n} exceeds the height cap {height_cap}")
    pts = []
    Q = P
    for k in range(1, n + 1):
        if Q is None:
            raise TorsionCollision(f"{k}P is the point at infinity")
        pts.append(Point(*Q))
        if k < n:
            Q = ec_add(a, Q, P)
            if Q is not None and Point(*Q) in pts:
                raise TorsionCollision(f"{k + 1}P repeats an earlier multiple")
    return PointSet(tuple(pts), f"elliptic a={a} b={b} n={n}")


# -- random and grid ------------------------------------------------------


def gen_random_general(n: int, rng: int, seed: int, max_retries: int = 10_000) -> PointSet:
    """n integer points in [-rng, rng]^2 with no three collinear."""
    if n < 1:
        raise ValueError("n must be >= 1")
    r = random.Random(seed)
    pts: list[Point] = []
    retries = 0
    while len(pts) < n:
        p = Point(r.randint(-rng, rng), r.randint(-rng, rng))
        ok = p not in pts and not any(
            orient(pts[i], pts[j], p) == 0 for i in range(len(pts)) for j in range(i + 1, len(pts))
        )
        if ok:
            pts.append(p)
            continue
        retries += 1
        if retries > max_retries:
            raise RetriesExhausted(f"placed {len(pts)} of {n} points")
    return PointSet(tuple(pts), f"random n={n} range={rng} seed={seed}")


def gen_grid(w: int, h: int) -> PointSet:
    if w < 1 or h < 1:
        raise ValueError("grid sides must be >= 1")
    return PointSet(tuple(Point(i, j) for i in range(w) for j in range(h)), f"grid {w}x{h}")


@dataclass
class GeneratorSpec:
    kind: str
    params: dict

    def build(self) -> PointSet:
        p = self.params
        if self.kind == "one-blocker":
            return gen_one_blocker(int(p["m"]))
        if self.kind == "cubic-power":
            return gen_cubic_power(int(p["m"]))
        if self.kind == "elliptic":
            P = (Fraction(p["P"][0]), Fraction(p["P"][1]))
            return gen_elliptic_coset(Fraction(p["a"]), Fraction(p["b"]), P, int(p["n"]))
        if self.kind == "random":
            return gen_random_general(int(p["n"]), int(p.get("range", 100)), int(p.get("seed", 0)))
        if self.kind == "grid":
            return gen_grid(int(p["w"]), int(p["h"]))
        raise ValueError(f"unknown generator kind {self.kind!r}")


def plant_outliers(A: PointSet, s: int, seed: int, box: int = 50, avoid=None) -> PointSet:
    """Append s random integer points that are off ``avoid`` (a predicate) and create no 4-collinear line."""
    from .geometry import max_collinear

    r = random.Random(seed)
    pts = list(A.points)
    added = 0
    tries = 0
    while added < s:
        tries += 1
        if tries > 10_000:
            raise RetriesExhausted("could not plant outliers")
        p = Point(r.randint(-box, box), r.randint(-box, box))
        if p in pts or (avoid is not None and avoid(p)):
            continue
        if max_collinear(PointSet(tuple(pts + [p]))) > 3:
            continue
        pts.append(p)
        added += 1
    return PointSet(tuple(pts), (A.label or "") + f" +{s} outliers")

