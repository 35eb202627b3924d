"""Finite models: bodies with world-lines, observer frames and the mass relation.

Every body has one world-line in a canonical world frame.  Observer ``k``
sees the image of that world-line under its frame map ``frames[k]`` (world
coordinates -> k's coordinates).  Masses are stored per (observer, body)
pair so that non-standard mass assignments stay expressible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import ParseError, UnknownId, UnknownObserver, ValidationError
from .minkowski import Point, Worldline, as_point
from .quantity import ONE, ZERO, Quantity
from .transforms import AffineMap, PoincareMap, is_poincare

KINDS = ("observer", "photon", "inertial", "plain")


@dataclass
class Body:
    id: str
    kind: str
    worldline: Worldline

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown body kind {self.kind!r}")


@dataclass
class CollisionEvent:
    vertex: Point
    incoming: Tuple[str, ...]
    outgoing: Tuple[str, ...]

    def __post_init__(self):
        self.vertex = as_point(self.vertex)
        self.incoming = tuple(self.incoming)
        self.outgoing = tuple(self.outgoing)


@dataclass
class Witnesses:
    """Finite witness demands for the existential axioms.

    photon_pairs: (observer, p, q) in the observer's coordinates
    thex: (observer, p, q) with q before p on a requested observer world-line
    forall_inecoll: (observer, v1, v2, m1, m2)
    exists_inecoll: (observer, body)
    """

    photon_pairs: list = field(default_factory=list)
    thex: list = field(default_factory=list)
    forall_inecoll: list = field(default_factory=list)
    exists_inecoll: list = field(default_factory=list)

    def copy(self) -> "Witnesses":
        return Witnesses(
            list(self.photon_pairs), list(self.thex), list(self.forall_inecoll), list(self.exists_inecoll)
        )


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: tuple = ()

    def __str__(self):
        return f"{self.kind}({', '.join(str(x) for x in self.detail)})"


class Scenario:
    def __init__(self, dimension: int, bodies=(), frames=None, masses=None, collisions=(), witnesses=None):
        if dimension < 2:
            raise ValueError("dimension must be at least 2")
        self.dimension = dimension
        self.bodies: Dict[str, Body] = {}
        for b in bodies:
            self.bodies[b.id] = b
        self.frames: Dict[str, AffineMap] = dict(frames or {})
        self.masses: Dict[Tuple[str, str], Quantity] = dict(masses or {})
        self.collisions: List[CollisionEvent] = list(collisions)
        self.witnesses = witnesses if witnesses is not None else Witnesses()
        self._wl = {}

    # -- structure

    @property
    def observers(self) -> List[str]:
        return [b.id for b in self.bodies.values() if b.kind == "observer"]

    @property
    def photons(self) -> List[str]:
        return [b.id for b in self.bodies.values() if b.kind == "photon"]

    def body(self, b: str) -> Body:
        try:
            return self.bodies[b]
        except KeyError:
            raise UnknownId(b) from None

    def frame(self, k: str) -> AffineMap:
        if k not in self.frames:
            raise UnknownObserver(k)
        return self.frames[k]

    def copy(self) -> "Scenario":
        return Scenario(
            self.dimension,
            [Body(b.id, b.kind, b.worldline) for b in self.bodies.values()],
            dict(self.frames),
            dict(self.masses),
            [CollisionEvent(c.vertex, c.incoming, c.outgoing) for c in self.collisions],
            self.witnesses.copy(),
        )

    def invalidate(self):
        self._wl.clear()

    # -- queries

    def wl(self, k: str, b: str) -> Worldline:
        key = (k, b)
        w = self._wl.get(key)
        if w is None:
            f = self.frame(k)
            w = self.body(b).worldline.map(f)
            self._wl[key] = w
        return w

    def ev(self, k: str, p) -> set:
        p = as_point(p)
        self.frame(k)
        return {b for b in self.bodies if self.wl(k, b).contains(p)}

    def loc(self, k: str, b: str, t) -> Optional[Point]:
        return self.wl(k, b).point_at_time(t)

    def velocity(self, k: str, b: str) -> Optional[tuple]:
        v = self.wl(k, b).velocity
        return None if v is None else v.coords

    def speed(self, k: str, b: str) -> Optional[Quantity]:
        v = self.wl(k, b).velocity
        return None if v is None else v.norm2().sqrt()

    def speed_squared(self, k: str, b: str) -> Optional[Quantity]:
        v = self.wl(k, b).velocity
        return None if v is None else v.norm2()

    def at_rest(self, k: str, b: str) -> bool:
        v = self.wl(k, b).velocity
        return v is not None and v.is_zero()

    def mass(self, k: str, b: str) -> Quantity:
        try:
            return self.masses[(k, b)]
        except KeyError:
            self.frame(k)
            self.body(b)
            raise UnknownId((k, b)) from None

    def rest_mass(self, b: str) -> Optional[Quantity]:
        """Common mass given by every observer that sees ``b`` at rest."""
        self.body(b)
        value = None
        for k in self.observers:
            if k not in self.frames or not self.at_rest(k, b):
                continue
            m = self.masses.get((k, b))
            if m is None:
                return None
            if value is None:
                value = m
            elif not (value == m):
                return None
        return value

    # -- equality

    def __eq__(self, other):
        if not isinstance(other, Scenario):
            return NotImplemented
        return (
            self.dimension == other.dimension
            and list(self.bodies) == list(other.bodies)
            and all(self.bodies[i] == other.bodies[i] for i in self.bodies)
            and self.frames == other.frames
            and self.masses == other.masses
            and self.collisions == other.collisions
            and _witness_key(self.witnesses) == _witness_key(other.witnesses)
        )

    __hash__ = None

    def __repr__(self):
        return (
            f"Scenario(d={self.dimension}, observers={len(self.observers)}, "
            f"bodies={len(self.bodies)}, collisions={len(self.collisions)})"
        )


def _witness_key(w: Witnesses):
    return json.dumps(_witnesses_json(w), sort_keys=True)


# ------------------------------------------------------------------ validation


def time_axis(d: int) -> Worldline:
    return Worldline(Point.zero(d), Point.basis(d, 0))


def validate_frame(s: Scenario) -> List[Violation]:
    out: List[Violation] = []
    d = s.dimension
    for b in s.bodies.values():
        if b.worldline.dim != d:
            out.append(Violation("DimensionMismatch", (b.id,)))
    for k in s.frames:
        if k not in s.bodies or s.bodies[k].kind != "observer":
            out.append(Violation("ObserverNotBody", (k,)))
    for k in s.observers:
        if k not in s.frames:
            out.append(Violation("MissingFrame", (k,)))
    for (k, b), m in s.masses.items():
        if k not in s.frames or b not in s.bodies:
            out.append(Violation("MassForUnknownId", (k, b)))
    for k in s.observers:
        for b in s.bodies:
            m = s.masses.get((k, b))
            if m is None:
                out.append(Violation("MassRelNotTotal", (k, b)))
            elif m.sign() <= 0:
                out.append(Violation("MassNotPositive", (k, b)))
    if any(v.kind in ("DimensionMismatch",) for v in out):
        return out
    for k in s.observers:
        f = s.frames.get(k)
        if f is None:
            continue
        if f.dim != d:
            out.append(Violation("DimensionMismatch", (k,)))
            continue
        if not f.is_invertible():
            out.append(Violation("FrameNotInvertible", (k,)))
            continue
        if not (s.wl(k, k) == time_axis(d)):
            out.append(Violation("AxSelfViolation", (k,)))
    for i, c in enumerate(s.collisions):
        for b in c.incoming + c.outgoing:
            if b not in s.bodies:
                out.append(Violation("CollisionUnknownBody", (i, b)))
    return out


# ------------------------------------------------------------------ files


def _lit(q) -> str:
    return q.literal()


def _opt(q):
    return None if q is None else q.literal()


def _pt(p) -> list:
    return [c.literal() for c in as_point(p).coords]


def _witnesses_json(w: Witnesses) -> dict:
    return {
        "photon_pairs": [{"observer": k, "p": _pt(p), "q": _pt(q)} for k, p, q in w.photon_pairs],
        "thex": [{"observer": k, "p": _pt(p), "q": _pt(q)} for k, p, q in w.thex],
        "forall_inecoll": [
            {"observer": k, "v1": _pt(v1), "v2": _pt(v2), "m1": _lit(m1), "m2": _lit(m2)}
            for k, v1, v2, m1, m2 in w.forall_inecoll
        ],
        "exists_inecoll": [{"observer": k, "body": b} for k, b in w.exists_inecoll],
    }


def scenario_to_json(s: Scenario) -> dict:
    return {
        "dimension": s.dimension,
        "bodies": [
            {
                "id": b.id,
                "kind": b.kind,
                "worldline": {
                    "base": _pt(b.worldline.base),
                    "direction": _pt(b.worldline.direction),
                    "tmin": _opt(b.worldline.lo),
                    "tmax": _opt(b.worldline.hi),
                },
            }
            for b in s.bodies.values()
        ],
        "frames": [
            {
                "observer": k,
                "matrix": [[c.literal() for c in row] for row in f.linear],
                "translation": [c.literal() for c in f.translation],
            }
            for k, f in s.frames.items()
        ],
        "masses": [{"observer": k, "body": b, "value": m.literal()} for (k, b), m in s.masses.items()],
        "collisions": [
            {"vertex": _pt(c.vertex), "in": list(c.incoming), "out": list(c.outgoing)} for c in s.collisions
        ],
        "witnesses": _witnesses_json(s.witnesses),
    }


def dumps(s: Scenario) -> str:
    return json.dumps(scenario_to_json(s), indent=1, ensure_ascii=False) + "\n"


def save_scenario(s: Scenario, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(s))


class _Reader:
    """Turns decoded JSON into a Scenario, locating bad literals in the text."""

    def __init__(self, text: str):
        self.text = text

    def where(self, literal: str):
        idx = self.text.find(json.dumps(literal, ensure_ascii=False))
        if idx < 0:
            return None, None
        line = self.text.count("\n", 0, idx) + 1
        col = idx - (self.text.rfind("\n", 0, idx) + 1) + 1
        return line, col

    def fail(self, message: str, literal=None):
        line, col = self.where(literal) if isinstance(literal, str) else (None, None)
        raise ParseError(message, line, col)

    def q(self, x) -> Quantity:
        if isinstance(x, bool) or not isinstance(x, (str, int)):
            self.fail(f"expected a quantity literal, got {x!r}")
        try:
            return Quantity(x if isinstance(x, int) else x)
        except ParseError as exc:
            self.fail(str(exc), x)

    def opt(self, x):
        return None if x is None else self.q(x)

    def pt(self, xs) -> Point:
        if not isinstance(xs, list):
            self.fail(f"expected a list of quantities, got {xs!r}")
        return Point(self.q(x) for x in xs)

    def key(self, obj, name, kind=None):
        if not isinstance(obj, dict) or name not in obj:
            self.fail(f"missing key {name!r}")
        v = obj[name]
        if kind is not None and not isinstance(v, kind):
            self.fail(f"key {name!r} has the wrong type")
        return v

    def scenario(self, data) -> Scenario:
        if not isinstance(data, dict):
            self.fail("top level must be an object")
        d = self.key(data, "dimension", int)
        bodies = []
        for item in self.key(data, "bodies", list):
            w = self.key(item, "worldline", dict)
            try:
                wl = Worldline(
                    self.pt(self.key(w, "base")),
                    self.pt(self.key(w, "direction")),
                    self.opt(w.get("tmin")),
                    self.opt(w.get("tmax")),
                )
                bodies.append(Body(str(self.key(item, "id")), self.key(item, "kind", str), wl))
            except ValueError as exc:
                if isinstance(exc, ParseError):
                    raise
                self.fail(f"bad body {item.get('id')!r}: {exc}")
        frames = {}
        for item in data.get("frames", []):
            matrix = [[self.q(c) for c in row] for row in self.key(item, "matrix", list)]
            trans = [self.q(c) for c in self.key(item, "translation", list)]
            try:
                f = AffineMap(matrix, trans)
            except ValueError as exc:
                self.fail(f"bad frame: {exc}")
            if is_poincare(f):
                f = PoincareMap._raw(f.linear, f.translation)
            frames[str(self.key(item, "observer"))] = f
        masses = {}
        for item in data.get("masses", []):
            masses[(str(self.key(item, "observer")), str(self.key(item, "body")))] = self.q(
                self.key(item, "value")
            )
        collisions = [
            CollisionEvent(self.pt(self.key(c, "vertex")), self.key(c, "in", list), self.key(c, "out", list))
            for c in data.get("collisions", [])
        ]
        wd = data.get("witnesses", {}) or {}
        wit = Witnesses(
            [(x["observer"], self.pt(x["p"]), self.pt(x["q"])) for x in wd.get("photon_pairs", [])],
            [(x["observer"], self.pt(x["p"]), self.pt(x["q"])) for x in wd.get("thex", [])],
            [
                (x["observer"], self.pt(x["v1"]), self.pt(x["v2"]), self.q(x["m1"]), self.q(x["m2"]))
                for x in wd.get("forall_inecoll", [])
            ],
            [(x["observer"], x["body"]) for x in wd.get("exists_inecoll", [])],
        )
        try:
            return Scenario(d, bodies, frames, masses, collisions, wit)
        except ValueError as exc:
            self.fail(str(exc))


def loads(text: str, validate: bool = True) -> Scenario:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    try:
        s = _Reader(text).scenario(data)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed scenario: {exc}") from None
    if validate:
        problems = validate_frame(s)
        if problems:
            raise ValidationError(problems)
    return s


def load_scenario(path, validate: bool = True) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return loads(text, validate=validate)


# convenience used by generators and tests


def unit_direction(velocity) -> Point:
    return Point((ONE, *velocity))


def observer_worldline(frame: AffineMap) -> Worldline:
    """World-frame world-line that ``frame`` maps onto the time axis."""
    inv = frame.inverse()
    return Worldline(inv.apply(Point.zero(frame.dim)), inv.apply_linear(Point.basis(frame.dim, 0)))


__all__ = [
    "Body",
    "CollisionEvent",
    "KINDS",
    "Scenario",
    "Violation",
    "Witnesses",
    "ZERO",
    "dumps",
    "load_scenario",
    "loads",
    "observer_worldline",
    "save_scenario",
    "scenario_to_json",
    "time_axis",
    "unit_direction",
    "validate_frame",
]
