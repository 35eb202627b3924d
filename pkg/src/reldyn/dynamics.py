"""Collisions, centers of mass, relativistic mass and four-momentum."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import NonpositiveMass, PreconditionViolation, SpeedNotSubluminal
from .minkowski import Point, Worldline, mink_len
from .quantity import ONE, ZERO, Quantity
from .transforms import gamma, median_observer_boost, transformed_velocity


def _q(x):
    return x if isinstance(x, Quantity) or hasattr(x, "sqrt") else Quantity(x)


def _vel(v) -> tuple:
    if isinstance(v, (tuple, list, Point)):
        return tuple(_q(c) for c in v)
    return (_q(v),)


def _same_length(u: tuple, v: tuple):
    """Pad the shorter velocity with zeros (so a bare ``0`` means rest)."""
    n = max(len(u), len(v))
    return u + (ZERO,) * (n - len(u)), v + (ZERO,) * (n - len(v))


# ------------------------------------------------------------------ collisions


def _endpoints(s, k):
    ends: Dict[Point, set] = {}
    starts: Dict[Point, set] = {}
    for b in s.bodies:
        w = s.wl(k, b)
        if w.horizontal:
            continue
        if w.hi is not None:
            ends.setdefault(w.at(w.hi), set()).add(b)
        if w.lo is not None:
            starts.setdefault(w.at(w.lo), set()).add(b)
    return ends, starts


def _ends_at(w: Worldline, q: Point) -> bool:
    return not w.horizontal and w.hi is not None and w.at(w.hi) == q


def _starts_at(w: Worldline, q: Point) -> bool:
    return not w.horizontal and w.lo is not None and w.at(w.lo) == q


def in_set(s, k, q) -> set:
    """Bodies whose k-world-line ends at q."""
    q = Point(q) if not isinstance(q, Point) else q
    s.frame(k)
    return {b for b in s.bodies if _ends_at(s.wl(k, b), q)}


def out_set(s, k, q) -> set:
    """Bodies whose k-world-line starts at q."""
    q = Point(q) if not isinstance(q, Point) else q
    s.frame(k)
    return {b for b in s.bodies if _starts_at(s.wl(k, b), q)}


def inecoll_triples(s, k) -> List[Tuple[str, str, str, Point]]:
    """All (b, c, d, q) with in_k(q) = {b, c} and out_k(q) = {d}, b < c."""
    ends, starts = _endpoints(s, k)
    out = []
    for q, incoming in ends.items():
        if len(incoming) != 2:
            continue
        outgoing = starts.get(q, set())
        if len(outgoing) != 1:
            continue
        b, c = sorted(incoming)
        (d,) = outgoing
        out.append((b, c, d, q))
    out.sort(key=lambda x: x[:3])
    return out


def inecoll(s, k, b, c, d) -> bool:
    s.body(b), s.body(c), s.body(d)
    if b == c:
        return False
    w = s.wl(k, b)
    if w.horizontal or w.hi is None:
        return False
    q = w.at(w.hi)
    return in_set(s, k, q) == {b, c} and out_set(s, k, q) == {d}


# ------------------------------------------------------------------ centers


@dataclass(frozen=True)
class CenterLine:
    """Affine-in-t locus ``base + t*direction`` for t in [lo, hi].

    ``empty`` marks an empty locus; ``lo == hi`` a single point.
    """

    base: Optional[Point]
    direction: Optional[Point]
    lo: Optional[Quantity]
    hi: Optional[Quantity]
    empty: bool = False

    @classmethod
    def nothing(cls) -> "CenterLine":
        return cls(None, None, None, None, True)

    def at(self, t) -> Optional[Point]:
        if self.empty:
            return None
        t = _q(t)
        if (self.lo is not None and t < self.lo) or (self.hi is not None and t > self.hi):
            return None
        return self.base + self.direction * t

    @property
    def is_point(self) -> bool:
        return not self.empty and self.lo is not None and self.hi is not None and self.lo == self.hi

    def anchor_points(self) -> list:
        if self.empty:
            return []
        if self.is_point:
            return [self.at(self.lo)]
        if self.lo is not None:
            t0 = self.lo
        elif self.hi is not None:
            t0 = self.hi - ONE
        else:
            t0 = ZERO
        t1 = self.hi if self.hi is not None else t0 + ONE
        return [self.at(t0), self.at(t1)]


def _max(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a if a >= b else b


def _min(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a if a <= b else b


def center_terms(s, k, b) -> tuple:
    """(m, m*base, m*direction, lo, hi, horizontal) for body b seen by k."""
    w = s.wl(k, b)
    m = s.mass(k, b)
    return (m, w.base * m, w.direction * m, w.lo, w.hi, w.horizontal)


def combine_centers(terms, dimension: int) -> CenterLine:
    if any(t[5] for t in terms):
        # loc is never unique on a simultaneity line
        return CenterLine.nothing()
    lo = hi = None
    for t in terms:
        lo, hi = _max(lo, t[3]), _min(hi, t[4])
    if lo is not None and hi is not None and lo > hi:
        return CenterLine.nothing()
    total = ZERO
    base = Point.zero(dimension)
    direction = Point.zero(dimension)
    for m, mb, md, _, _, _ in terms:
        total = total + m
        base = base + mb
        direction = direction + md
    return CenterLine(base / total, direction / total, lo, hi)


def center_line(s, k, bodies: Sequence[str]) -> CenterLine:
    """Center-line of mass of the given bodies according to k."""
    return combine_centers([center_terms(s, k, b) for b in bodies], s.dimension)


def cen2_line(s, k, b, c) -> CenterLine:
    return center_line(s, k, (b, c))


def cen3_line(s, k, a, b, c) -> CenterLine:
    return center_line(s, k, (a, b, c))


def cen(s, k, bodies: Sequence[str], t) -> Optional[Point]:
    """Mass-weighted average of the bodies' locations at time t."""
    locs = [s.loc(k, b, t) for b in bodies]
    if any(p is None for p in locs):
        return None
    masses = [s.mass(k, b) for b in bodies]
    total = ZERO
    acc = Point.zero(s.dimension)
    for m, p in zip(masses, locs):
        total = total + m
        acc = acc + p * m
    return acc / total


def cen2(s, k, b, c, t) -> Optional[Point]:
    return cen(s, k, (b, c), t)


def cen3(s, k, a, b, c, t) -> Optional[Point]:
    return cen(s, k, (a, b, c), t)


# ------------------------------------------------------------------ mass and momentum


def rel_mass_from_rest(m0, speed) -> Quantity:
    m0, speed = _q(m0), _q(speed)
    if m0.sign() <= 0:
        raise NonpositiveMass(f"rest mass {m0} is not positive")
    if speed < 0 or not speed < 1:
        raise SpeedNotSubluminal(f"speed {speed} outside [0, 1)")
    return m0 / (1 - speed * speed).sqrt()


def four_momentum(s, k, b) -> Optional[Point]:
    v = s.velocity(k, b)
    if v is None:
        return None
    m = s.mass(k, b)
    return Point((m, *(m * c for c in v)))


def four_momentum_of(m0, velocity) -> Point:
    """m0 * gamma * (1, v)."""
    m0 = _q(m0)
    if m0.sign() <= 0:
        raise NonpositiveMass(f"rest mass {m0} is not positive")
    v = _vel(velocity)
    m = m0 * gamma(v)
    return Point((m, *(m * c for c in v)))


@dataclass(frozen=True)
class Resolution:
    mass: Quantity
    velocity: Tuple[Quantity, ...]
    rest_mass: Quantity
    momentum: Point


def resolve_collision(b, c) -> Resolution:
    """Outgoing body of an inelastic collision, from summed four-momenta.

    ``b`` and ``c`` are (rest mass, velocity) pairs; a velocity may be a
    scalar (one space dimension) or a tuple.
    """
    vb, vc = _same_length(_vel(b[1]), _vel(c[1]))
    p = four_momentum_of(b[0], vb) + four_momentum_of(c[0], vc)
    mass = p.time
    velocity = tuple(x / mass for x in p.coords[1:])
    return Resolution(mass, velocity, mink_len(p), p)


def mass_dependence_witness(m0b, m0c, vb, vc, frame=None) -> Tuple[Quantity, Quantity]:
    """Mass ratios m(b)/m(c) in the collision frame and in another frame.

    The other frame defaults to the one where b and c move oppositely.
    """
    vb, vc = _same_length(_vel(vb), _vel(vc))
    if all(x == y for x, y in zip(vb, vc)):
        raise PreconditionViolation("co-moving bodies do not collide; ratios are frame independent")
    m0b, m0c = _q(m0b), _q(m0c)
    ratio_k = (m0b * gamma(vb)) / (m0c * gamma(vc))
    h = frame if frame is not None else median_observer_boost(vb, vc)
    hb = transformed_velocity(h, vb)
    hc = transformed_velocity(h, vc)
    ratio_h = (m0b * gamma(hb)) / (m0c * gamma(hc))
    return ratio_k, ratio_h
