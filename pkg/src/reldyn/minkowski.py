"""Coordinate geometry of Q^d: points, metrics, lines, segments, world-lines.

Coordinate 0 is time, the rest are space.  All predicates are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import DegeneratePair, DimensionMismatch, EmptyInput
from .quantity import Quantity

ZERO = Quantity(0)
ONE = Quantity(1)


def _q(x):
    if isinstance(x, Quantity) or hasattr(x, "sqrt"):
        return x
    return Quantity(x)


class Point:
    """An immutable d-tuple of quantities (also used for plain vectors)."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable):
        self.coords = tuple(_q(c) for c in coords)

    @classmethod
    def _raw(cls, coords: tuple) -> "Point":
        # coords already exact; skip conversion
        p = object.__new__(cls)
        p.coords = coords
        return p

    @classmethod
    def of(cls, *coords) -> "Point":
        return cls(coords)

    @classmethod
    def zero(cls, d: int) -> "Point":
        return cls((ZERO,) * d)

    @classmethod
    def basis(cls, d: int, i: int) -> "Point":
        return cls(ONE if j == i else ZERO for j in range(d))

    @classmethod
    def event(cls, t, space: Sequence) -> "Point":
        return cls((t, *space))

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def time(self):
        return self.coords[0]

    @property
    def space(self) -> "Point":
        return Point(self.coords[1:])

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def _check(self, other: "Point"):
        if len(other.coords) != len(self.coords):
            raise DimensionMismatch(f"dimension {len(self.coords)} vs {len(other.coords)}")

    def __add__(self, other: "Point") -> "Point":
        self._check(other)
        return Point._raw(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Point") -> "Point":
        self._check(other)
        return Point._raw(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Point":
        return Point._raw(tuple(-a for a in self.coords))

    def __mul__(self, k) -> "Point":
        k = _q(k)
        return Point._raw(tuple(a * k for a in self.coords))

    __rmul__ = __mul__

    def __truediv__(self, k) -> "Point":
        inv = 1 / _q(k)
        return Point._raw(tuple(a * inv for a in self.coords))

    def dot(self, other: "Point"):
        self._check(other)
        total = ZERO
        for a, b in zip(self.coords, other.coords):
            total = total + a * b
        return total

    def norm2(self):
        return self.dot(self)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return len(self.coords) == len(other.coords) and all(
            a == b for a, b in zip(self.coords, other.coords)
        )

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "Point(" + ", ".join(str(c) for c in self.coords) + ")"

    def literals(self) -> list:
        return [c.literal() for c in self.coords]


def as_point(p) -> Point:
    return p if isinstance(p, Point) else Point(p)


# ------------------------------------------------------------------ metrics


def euclid_len(v) -> Quantity:
    return as_point(v).norm2().sqrt()


def mink_square(p) -> Quantity:
    """p_t**2 - |p_s|**2 (the quadratic form, no square root)."""
    p = as_point(p)
    total = p.coords[0] * p.coords[0]
    for c in p.coords[1:]:
        total = total - c * c
    return total


def mink_dot(p, q) -> Quantity:
    p, q = as_point(p), as_point(q)
    total = p.coords[0] * q.coords[0]
    for a, b in zip(p.coords[1:], q.coords[1:]):
        total = total - a * b
    return total


def mink_len(p) -> Quantity:
    """Signed Minkowski length: +sqrt for causal vectors, -sqrt otherwise."""
    s = mink_square(p)
    if s.sign() >= 0:
        return s.sqrt()
    return -(-s).sqrt()


def mink_dist(p, q) -> Quantity:
    return mink_len(as_point(p) - as_point(q))


def is_slope_one(p, q) -> bool:
    p, q = as_point(p), as_point(q)
    d = p - q
    if d.is_zero():
        raise DegeneratePair("slope is undefined for coincident points")
    return mink_square(d).is_zero()


def is_parallel(u: Point, v: Point) -> bool:
    """True iff u and v are nonzero multiples of each other."""
    u, v = as_point(u), as_point(v)
    u._check(v)
    j = next((i for i, c in enumerate(u.coords) if not c.is_zero()), None)
    if j is None or v.is_zero():
        return False
    uj, vj = u.coords[j], v.coords[j]
    return all((a * vj - b * uj).is_zero() for a, b in zip(u.coords, v.coords))


def length_ratio(u: Point, v: Point) -> Quantity:
    """|u| / |v| for parallel u, v, without square roots."""
    j = next(i for i, c in enumerate(v.coords) if not c.is_zero())
    return abs(u.coords[j] / v.coords[j])


# ------------------------------------------------------------------ lines


def _pivot(v: Point) -> int:
    for i, c in enumerate(v.coords):
        if not c.is_zero():
            return i
    raise ValueError("zero direction")


@dataclass(frozen=True, eq=False)
class Line:
    base: Point
    direction: Point

    def __post_init__(self):
        if self.direction.is_zero():
            raise ValueError("a line needs a nonzero direction")
        self.base._check(self.direction)

    @property
    def dim(self) -> int:
        return self.base.dim

    def param_of(self, p: Point) -> Optional[Quantity]:
        """The lambda with p == base + lambda*direction, or None."""
        p = as_point(p)
        self.base._check(p)
        diff = p - self.base
        j = _pivot(self.direction)
        lam = diff.coords[j] / self.direction.coords[j]
        for a, b in zip(diff.coords, self.direction.coords):
            if not (a - lam * b).is_zero():
                return None
        return lam

    def at(self, lam) -> Point:
        return self.base + self.direction * lam

    def contains(self, p) -> bool:
        return self.param_of(p) is not None

    def __eq__(self, other):
        if not isinstance(other, Line):
            return NotImplemented
        return is_parallel(self.direction, other.direction) and self.contains(other.base)

    __hash__ = None

    def __repr__(self):
        return f"Line(base={self.base!r}, direction={self.direction!r})"


@dataclass(frozen=True, eq=False)
class Segment:
    p: Point
    q: Point

    def __post_init__(self):
        self.p._check(self.q)

    def contains(self, x) -> bool:
        x = as_point(x)
        if self.p == self.q:
            return x == self.p
        lam = Line(self.p, self.q - self.p).param_of(x)
        return lam is not None and ZERO <= lam <= ONE

    def points(self) -> list:
        return [self.p, self.q]

    def __eq__(self, other):
        if not isinstance(other, Segment):
            return NotImplemented
        return {self.p, self.q} == {other.p, other.q} and (
            (self.p == other.p and self.q == other.q) or (self.p == other.q and self.q == other.p)
        )

    __hash__ = None


class Worldline:
    """A line, ray or segment stored as carrier plus parameter interval.

    For carriers that are not simultaneity lines the direction is scaled to
    time component 1 and the base to time 0, so the parameter *is* the time
    coordinate; ``lo``/``hi`` are then time bounds (``None`` = unbounded).
    Horizontal carriers keep a parameter normalised by the first nonzero
    direction component.
    """

    __slots__ = ("base", "direction", "lo", "hi")

    def __init__(self, base, direction, lo=None, hi=None):
        base, direction = as_point(base), as_point(direction)
        if direction.is_zero():
            raise ValueError("a world-line needs a nonzero direction")
        base._check(direction)
        lo = None if lo is None else _q(lo)
        hi = None if hi is None else _q(hi)
        if lo is not None and hi is not None and not lo < hi:
            raise ValueError("world-line interval must contain at least two points")
        j = _pivot(direction)
        scale = direction.coords[j]
        if not (scale == ONE):
            direction = direction / scale
            if lo is not None:
                lo = lo * scale
            if hi is not None:
                hi = hi * scale
            if scale.sign() < 0:
                lo, hi = hi, lo
        shift = base.coords[j]
        if not shift.is_zero():
            base = base - direction * shift
            lo = None if lo is None else lo + shift
            hi = None if hi is None else hi + shift
        self.base = base
        self.direction = direction
        self.lo = lo
        self.hi = hi

    @classmethod
    def through(cls, p, q, bounded_below=True, bounded_above=True) -> "Worldline":
        """The segment (or ray/line if unbounded) from p to q."""
        p, q = as_point(p), as_point(q)
        d = q - p
        w = cls(p, d, ZERO if bounded_below else None, ONE if bounded_above else None)
        return w

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def carrier(self) -> Line:
        return Line(self.base, self.direction)

    @property
    def horizontal(self) -> bool:
        return self.direction.coords[0].is_zero()

    @property
    def kind(self) -> str:
        if self.lo is None and self.hi is None:
            return "full-line"
        if self.lo is None or self.hi is None:
            return "ray"
        return "segment"

    @property
    def velocity(self) -> Optional[Point]:
        if self.horizontal:
            return None
        return self.direction.space

    def at(self, lam) -> Point:
        return self.base + self.direction * lam

    def start(self) -> Optional[Point]:
        return None if self.lo is None else self.at(self.lo)

    def end(self) -> Optional[Point]:
        return None if self.hi is None else self.at(self.hi)

    def param_of(self, p) -> Optional[Quantity]:
        lam = self.carrier.param_of(p)
        if lam is None:
            return None
        if self.lo is not None and lam < self.lo:
            return None
        if self.hi is not None and lam > self.hi:
            return None
        return lam

    def contains(self, p) -> bool:
        return self.param_of(p) is not None

    def point_at_time(self, t) -> Optional[Point]:
        """The unique point with time coordinate t, or None."""
        if self.horizontal:
            return None
        t = _q(t)
        if self.lo is not None and t < self.lo:
            return None
        if self.hi is not None and t > self.hi:
            return None
        return self.at(t)

    def sample_points(self) -> list:
        """Two distinct points of the world-line (endpoints when bounded)."""
        lo = self.lo if self.lo is not None else (self.hi - ONE if self.hi is not None else ZERO)
        hi = self.hi if self.hi is not None else lo + ONE
        return [self.at(lo), self.at(hi)]

    def map(self, f) -> "Worldline":
        """Image under an affine map ``f`` (anything with apply/apply_linear)."""
        base = f.apply(self.base)
        direction = f.apply_linear(self.direction)
        return Worldline(base, direction, self.lo, self.hi)

    def __eq__(self, other):
        if not isinstance(other, Worldline):
            return NotImplemented
        return (
            self.base == other.base
            and self.direction == other.direction
            and _opt_eq(self.lo, other.lo)
            and _opt_eq(self.hi, other.hi)
        )

    __hash__ = None

    def __repr__(self):
        return (
            f"Worldline(base={self.base!r}, direction={self.direction!r}, "
            f"lo={self.lo}, hi={self.hi})"
        )


def _opt_eq(a, b) -> bool:
    if a is None or b is None:
        return a is None and b is None
    return a == b


# ------------------------------------------------------------------ collinearity


class _Degenerate:
    """All given points coincide: vacuously collinear."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "DEGENERATE"

    def __bool__(self):
        return True


DEGENERATE = _Degenerate()


def _anchor_points(item) -> list:
    if isinstance(item, Point):
        return [item]
    if isinstance(item, Line):
        return [item.base, item.base + item.direction]
    if isinstance(item, Segment):
        return [item.p, item.q]
    if isinstance(item, Worldline):
        return item.sample_points()
    if hasattr(item, "anchor_points"):
        return item.anchor_points()
    return [as_point(p) for p in item]


def common_line(point_sets: Sequence):
    """A Line containing every given point set, ``None`` if there is none, or
    ``DEGENERATE`` when all points coincide (or there are none)."""
    if not point_sets:
        raise EmptyInput("common_line needs at least one point set")
    pts = [p for item in point_sets for p in _anchor_points(item)]
    if not pts:
        return DEGENERATE
    p0 = pts[0]
    direction = None
    for p in pts[1:]:
        d = p - p0
        if not d.is_zero():
            direction = d
            break
    if direction is None:
        return DEGENERATE
    line = Line(p0, direction)
    for p in pts:
        if not line.contains(p):
            return None
    return line
