"""Exact planar predicates and line enumeration."""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional

from .errors import DuplicatePoint, InputParseError, TooFewPoints


def parse_rational(v) -> Fraction:
    if isinstance(v, bool):
        raise InputParseError(f"not a rational: {v!r}")
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise InputParseError(f"not a rational: {v!r}") from e
    raise InputParseError(f"not a rational: {v!r}")


def rat_str(v: Fraction) -> str:
    return str(Fraction(v))


@dataclass(frozen=True, order=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    def to_json(self) -> dict:
        return {"x": rat_str(self.x), "y": rat_str(self.y)}

    @classmethod
    def from_json(cls, d) -> Point:
        try:
            return cls(parse_rational(d["x"]), parse_rational(d["y"]))
        except (KeyError, TypeError) as e:
            raise InputParseError(f"bad point record: {d!r}") from e

    def __repr__(self) -> str:
        return f"({self.x}, {self.y})"


@dataclass(frozen=True)
class PointSet:
    points: tuple
    label: Optional[str] = None
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        pts = tuple(p if isinstance(p, Point) else Point(*p) for p in self.points)
        object.__setattr__(self, "points", pts)
        index = {}
        for i, p in enumerate(pts):
            if p in index:
                raise DuplicatePoint(f"point {p} appears at indices {index[p]} and {i}")
            index[p] = i
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i) -> Point:
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    def index_of(self, p: Point) -> Optional[int]:
        return self._index.get(p)

    def subset(self, indices: Iterable[int], label: Optional[str] = None) -> PointSet:
        return PointSet(tuple(self.points[i] for i in indices), label)

    def extended(self, extra: Iterable, label: Optional[str] = None) -> PointSet:
        return PointSet(self.points + tuple(extra), label if label is not None else self.label)

    def to_json(self) -> dict:
        d = {}
        if self.label is not None:
            d["label"] = self.label
        d["points"] = [p.to_json() for p in self.points]
        return d

    @classmethod
    def from_json(cls, d) -> PointSet:
        if not isinstance(d, dict) or not isinstance(d.get("points"), list):
            raise InputParseError("point set JSON needs a 'points' list")
        return cls(tuple(Point.from_json(p) for p in d["points"]), d.get("label"))

    @classmethod
    def load(cls, path) -> PointSet:
        try:
            with open(path, encoding="utf-8") as fh:
                return cls.from_json(json.load(fh))
        except json.JSONDecodeError as e:
            raise InputParseError(f"{path}: {e}") from e

    def dump(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=1)


class LineKey(NamedTuple):
    """Primitive integer triple (a, b, c) for the line ax + by + c = 0."""

    a: int
    b: int
    c: int

    def contains(self, p: Point) -> bool:
        return self.a * p.x + self.b * p.y + self.c == 0

    def to_json(self) -> list[int]:
        return [self.a, self.b, self.c]


def line_through(p: Point, q: Point) -> LineKey:
    if p == q:
        raise ValueError("a line needs two distinct points")
    a = p.y - q.y
    b = q.x - p.x
    c = p.x * q.y - q.x * p.y
    den = math.lcm(a.denominator, b.denominator, c.denominator)
    a, b, c = int(a * den), int(b * den), int(c * den)
    g = math.gcd(a, b, c)
    a, b, c = a // g, b // g, c // g
    if a < 0 or (a == 0 and b < 0):
        a, b, c = -a, -b, -c
    return LineKey(a, b, c)


def orient(p: Point, q: Point, r: Point) -> int:
    """+1 when p, q, r turn counterclockwise, -1 clockwise, 0 when collinear."""
    d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    return (d > 0) - (d < 0)


def strictly_between(p: Point, q: Point, r: Point) -> bool:
    """Is r in the open segment (pq)?"""
    if p == q or orient(p, q, r) != 0:
        return False
    if p.x != q.x:
        return min(p.x, q.x) < r.x < max(p.x, q.x)
    return min(p.y, q.y) < r.y < max(p.y, q.y)


@dataclass
class LineStats:
    n: int
    t2: int
    histogram: dict
    rich_lines: dict

    @property
    def t3(self) -> int:
        return self.histogram.get(3, 0)

    def pair_count(self) -> int:
        return sum(math.comb(s, 2) * c for s, c in self.histogram.items())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "t2": self.t2,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "rich_lines": [
                {"line": list(k), "members": v} for k, v in sorted(self.rich_lines.items())
            ],
        }


def _line_classes(A: PointSet) -> dict:
    """Map each spanned line to its member indices (ascending)."""
    lines: dict = {}
    pts = A.points
    n = len(pts)
    for i in range(n):
        buckets: dict = {}
        for j in range(i + 1, n):
            buckets.setdefault(line_through(pts[i], pts[j]), []).append(j)
        for key, members in buckets.items():
            # the line is new exactly when i is its smallest member
            if key not in lines:
                lines[key] = [i] + members
    return lines


def enumerate_lines(A: PointSet) -> LineStats:
    n = len(A)
    if n < 2:
        raise TooFewPoints("line enumeration needs at least two points")
    lines = _line_classes(A)
    hist = Counter(len(m) for m in lines.values())
    rich = {k: sorted(m) for k, m in lines.items() if len(m) >= 3}
    stats = LineStats(n, hist.get(2, 0), dict(hist), rich)
    assert stats.pair_count() == math.comb(n, 2)
    return stats


def max_collinear(A: PointSet) -> int:
    n = len(A)
    if n <= 2:
        return n
    stats = enumerate_lines(A)
    return max(stats.histogram)
