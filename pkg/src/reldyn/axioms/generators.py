"""Scenario generators: standard models, counterexamples and corruptions.

Standard models are built in a canonical world frame.  Every massive body
carries a world-frame four-momentum; the mass an observer assigns to it is
the time component of that four-momentum in the observer's coordinates.
With rational velocities and Lorentz factors this keeps almost every
number rational.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import DimensionTooLow, SpeedNotSubluminal
from ..minkowski import Point, Worldline
from ..quantity import ONE, ZERO, Quantity
from ..scenario import Body, CollisionEvent, Scenario, Witnesses, observer_worldline
from ..transforms import (
    AffineMap,
    PoincareMap,
    boost_for_velocity,
    gamma,
    spatial_rotation,
)


def _q(x):
    return x if isinstance(x, Quantity) else Quantity(x)


def _pad(p, n: int) -> tuple:
    p = tuple(_q(c) for c in p)
    return p + (ZERO,) * (n - len(p))


def _vec(v, n: int) -> tuple:
    if v is None:
        return (ZERO,) * n
    if not isinstance(v, (tuple, list, Point)):
        v = (v,)
    v = tuple(_q(c) for c in v)
    if len(v) > n:
        raise ValueError(f"velocity has {len(v)} components, space has {n}")
    return v + (ZERO,) * (n - len(v))


class ModelBuilder:
    """Incremental construction of a scenario satisfying the dynamics axioms."""

    def __init__(self, dimension: int = 4):
        if dimension < 2:
            raise DimensionTooLow("dimension must be at least 2")
        self.d = dimension
        self.bodies: List[Body] = []
        self.frames: Dict[str, PoincareMap] = {}
        self.momenta: Dict[str, Point] = {}
        self.collisions: List[CollisionEvent] = []
        self.witnesses = Witnesses()
        self._counter: Dict[str, int] = {}

    def _id(self, prefix: str) -> str:
        n = self._counter.get(prefix, 0)
        self._counter[prefix] = n + 1
        return f"{prefix}{n}"

    def _frame(self, k: Optional[str]) -> AffineMap:
        if k is None:
            return PoincareMap.identity(self.d)
        return self.frames[k]

    def world_momentum(self, m0, velocity, frame: Optional[str] = None) -> Point:
        """m0 * gamma * (1, v) given in ``frame``'s coordinates, as world vector."""
        v = _vec(velocity, self.d - 1)
        p = Point((ONE, *v)) * (_q(m0) * gamma(v))
        return self._frame(frame).inverse().apply_linear(p)

    # -- bodies

    def observer(
        self,
        velocity=None,
        relative_to: Optional[str] = None,
        origin=None,
        rotation=None,
        rest_mass=1,
        id: Optional[str] = None,
    ) -> str:
        """Add an observer moving with ``velocity`` in ``relative_to``'s frame.

        ``origin`` (in the reference frame) is the event the new observer
        uses as coordinate origin; ``rotation`` is a skew matrix fed to the
        Cayley transform to rotate the new observer's spatial axes.
        """
        k = id or self._id("k")
        v = _vec(velocity, self.d - 1)
        ref = self._frame(relative_to)
        f = boost_for_velocity(v)
        if rotation is not None:
            f = spatial_rotation(rotation).compose(f)
        if origin is not None:
            f = f.compose(PoincareMap.translation_by(-Point(_pad(origin, self.d))))
        frame = f.compose(ref)
        self.frames[k] = frame
        self.bodies.append(Body(k, "observer", observer_worldline(frame)))
        self.momenta[k] = frame.inverse().apply_linear(Point.basis(self.d, 0)) * _q(rest_mass)
        return k

    def inertial(self, m0, velocity, through, frame: Optional[str] = None, lo=None, hi=None, kind="inertial", id=None) -> str:
        """Body with rest mass m0 moving with ``velocity`` through ``through``.

        Velocity, point and the parameter bounds (times) refer to ``frame``.
        """
        b = id or self._id("b")
        v = _vec(velocity, self.d - 1)
        f = self._frame(frame)
        through = Point(_pad(through, self.d))
        t0 = through.time
        local = Worldline(
            through,
            Point((ONE, *v)),
            None if lo is None else _q(lo) - t0,
            None if hi is None else _q(hi) - t0,
        )
        self.bodies.append(Body(b, kind, local.map(f.inverse())))
        self.momenta[b] = self.world_momentum(m0, v, frame)
        return b

    def photon(self, p, q, frame: Optional[str] = None, energy=1, id=None) -> str:
        """Photon through p and q (a slope-1 pair in ``frame``)."""
        ph = id or self._id("ph")
        p, q = Point(p), Point(q)
        if q.time < p.time:
            p, q = q, p
        direction = q - p
        direction = direction / direction.time
        local = Worldline(p, direction)
        world = local.map(self._frame(frame).inverse())
        self.bodies.append(Body(ph, "photon", world))
        self.momenta[ph] = world.direction * _q(energy)
        return ph

    def co_moving_observer(self, velocity, frame: Optional[str] = None) -> str:
        return self.observer(velocity, relative_to=frame)

    def collision(
        self,
        b_spec,
        c_spec,
        vertex=None,
        frame: Optional[str] = None,
        rest_observers: bool = True,
        demand: bool = True,
        ids: Optional[Tuple[str, str, str]] = None,
    ) -> Tuple[str, str, str]:
        """Inelastic collision of (m0, velocity) specs at ``vertex``.

        The outgoing body carries the summed four-momentum.  With
        ``rest_observers`` an observer co-moving with each incoming body is
        added (unless one already exists) so both have rest masses.
        """
        n = self._counter.get("col", 0)
        self._counter["col"] = n + 1
        bid, cid, did = ids or (f"b{n}", f"c{n}", f"d{n}")
        (m1, v1), (m2, v2) = b_spec, c_spec
        v1, v2 = _vec(v1, self.d - 1), _vec(v2, self.d - 1)
        f = self._frame(frame)
        q_local = Point(_pad(vertex, self.d)) if vertex is not None else Point.zero(self.d)
        q_world = f.inverse().apply(q_local)
        inv = f.inverse()
        for x, v, m in ((bid, v1, m1), (cid, v2, m2)):
            local = Worldline(q_local, Point((ONE, *v)), None, ZERO)
            self.bodies.append(Body(x, "inertial", local.map(inv)))
            self.momenta[x] = self.world_momentum(m, v, frame)
        p = self.momenta[bid] + self.momenta[cid]
        self.bodies.append(Body(did, "inertial", Worldline(q_world, p, ZERO, None)))
        self.momenta[did] = p
        self.collisions.append(CollisionEvent(q_world, (bid, cid), (did,)))
        if rest_observers:
            for v in (v1, v2):
                if not self._has_observer_with(frame, v):
                    self.observer(v, relative_to=frame)
        if demand and frame is not None:
            self.witnesses.forall_inecoll.append(
                (frame, Point(v1), Point(v2), _q(m1), _q(m2))
            )
            if _q(m1) == _q(m2) and all(c.is_zero() for c in v2):
                self.witnesses.exists_inecoll.append((frame, bid))
        return bid, cid, did

    def _has_observer_with(self, frame, v) -> bool:
        f = self._frame(frame)
        target = Point((ONE, *v))
        for b in self.bodies:
            if b.kind != "observer":
                continue
            w = b.worldline.direction
            local = f.apply_linear(w)
            local = local / local.time
            if local == target:
                return True
        return False

    # -- witnesses

    def add_photon_witnesses(self, rng: random.Random, energy=None):
        for k in list(self.frames):
            p = Point(Quantity(Fraction(rng.randint(-6, 6), rng.randint(1, 3))) for _ in range(self.d))
            n = rational_unit_vector(rng, self.d - 1)
            dt = Quantity(Fraction(rng.randint(1, 5), rng.randint(1, 3)))
            q = p + Point((ONE, *n)) * dt
            self.photon(p, q, frame=k, energy=energy or Quantity(Fraction(rng.randint(1, 9), rng.randint(1, 4))))
            self.witnesses.photon_pairs.append((k, p, q))

    def add_thex_witnesses(self):
        obs = [b.id for b in self.bodies if b.kind == "observer"]
        for k in obs:
            fk = self.frames[k]
            for h in obs:
                if h == k:
                    continue
                wl = next(b.worldline for b in self.bodies if b.id == h).map(fk)
                self.witnesses.thex.append((k, wl.at(ONE), wl.at(ZERO)))

    # -- result

    def build(self) -> Scenario:
        masses = {}
        for k, f in self.frames.items():
            for b in self.bodies:
                masses[(k, b.id)] = f.apply_linear(self.momenta[b.id]).time
        return Scenario(self.d, self.bodies, self.frames, masses, self.collisions, self.witnesses)


# ------------------------------------------------------------------ random pieces


def _rat(rng: random.Random, lo: int, hi: int, den: int = 7) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def rational_unit_vector(rng: random.Random, n: int) -> tuple:
    """A unit vector with rational entries (inverse stereographic map)."""
    if n == 1:
        return (Quantity(rng.choice((1, -1))),)
    y = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n - 1)]
    s = sum(c * c for c in y)
    return tuple(Quantity(c) for c in [2 * c / (1 + s) for c in y] + [(s - 1) / (1 + s)])


def pythagorean_velocity(rng: random.Random, n: int, max_component: int = 3) -> tuple:
    """Random velocity 2u/(1+|u|^2) with rational Lorentz factor."""
    while True:
        u = [Fraction(rng.randint(-max_component, max_component), rng.randint(2, 9)) for _ in range(n)]
        s = sum(c * c for c in u)
        if s < 1:
            return tuple(Quantity(2 * c / (1 + s)) for c in u)


def rational_velocity(rng: random.Random, n: int) -> tuple:
    """Random rational velocity (Lorentz factor usually irrational)."""
    while True:
        v = [Fraction(rng.randint(-9, 9), rng.randint(2, 12)) for _ in range(n)]
        if sum(c * c for c in v) < 1:
            return tuple(Quantity(c) for c in v)


def random_skew(rng: random.Random, n: int):
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = Fraction(rng.randint(-3, 3), rng.randint(1, 4))
            m[i][j], m[j][i] = x, -x
    return m


def generate_standard_model(
    dimension: int = 4,
    observer_velocities: Sequence = (),
    bodies: Sequence = (),
    collisions: Sequence = (),
    seed: Optional[int] = None,
    photons: bool = True,
) -> Scenario:
    """A scenario in which the dynamics axioms hold by construction.

    Observer velocities are given relative to the first observer ``k0``
    (whose frame is the world frame).  ``bodies`` are (m0, velocity) specs
    and ``collisions`` are (m1, v1, m2, v2) specs, both in k0's frame; each
    body and incoming collision partner gets a co-moving observer so that
    its rest mass is defined.
    """
    if dimension < 3:
        raise DimensionTooLow("standard models need d >= 3")
    rng = random.Random(seed if seed is not None else 0)
    mb = ModelBuilder(dimension)
    k0 = mb.observer()
    for v in observer_velocities:
        mb.observer(v, relative_to=k0, origin=_random_point(rng, dimension))
    for i, (m0, v) in enumerate(bodies):
        v = _vec(v, dimension - 1)
        if not _speed_ok(v):
            raise SpeedNotSubluminal(f"body speed not below 1: {v}")
        mb.inertial(m0, v, _random_point(rng, dimension), frame=k0)
        if not mb._has_observer_with(k0, v):
            mb.observer(v, relative_to=k0, origin=_random_point(rng, dimension))
    for i, (m1, v1, m2, v2) in enumerate(collisions):
        mb.collision((m1, v1), (m2, v2), vertex=_random_point(rng, dimension), frame=k0)
    if photons:
        mb.add_photon_witnesses(rng)
    mb.add_thex_witnesses()
    return mb.build()


def _speed_ok(v) -> bool:
    s = ZERO
    for c in v:
        s = s + c * c
    return s < 1


def _random_point(rng: random.Random, d: int) -> Point:
    return Point(Quantity(_rat(rng, -5, 5, 3)) for _ in range(d))


def random_standard_model(
    rng: random.Random,
    dimension: int = 4,
    observers: Tuple[int, int] = (1, 2),
    collisions: Tuple[int, int] = (1, 2),
    free_bodies: Tuple[int, int] = (0, 2),
    rational_speeds: bool = False,
    rotations: bool = True,
    photons: bool = True,
) -> Scenario:
    """Random standard model.

    ``rational_speeds`` draws plain rational velocities (so Lorentz factors
    involve square roots); otherwise velocities have rational Lorentz
    factors and the whole model stays rational.
    """
    if dimension < 3:
        raise DimensionTooLow("standard models need d >= 3")
    n = dimension - 1
    draw = (lambda: rational_velocity(rng, n)) if rational_speeds else (lambda: pythagorean_velocity(rng, n))
    mb = ModelBuilder(dimension)
    k0 = mb.observer()
    for _ in range(rng.randint(*observers)):
        skew = random_skew(rng, n) if rotations and rng.random() < 0.5 else None
        mb.observer(draw(), relative_to=k0, origin=_random_point(rng, dimension), rotation=skew)
    obs = list(mb.frames)
    for _ in range(rng.randint(*free_bodies)):
        frame = rng.choice(obs)
        v = draw()
        mb.inertial(Quantity(_rat(rng, 1, 9, 4)), v, _random_point(rng, dimension), frame=frame)
        mb.observer(v, relative_to=frame, origin=_random_point(rng, dimension))
    for _ in range(rng.randint(*collisions)):
        frame = rng.choice(obs)
        m1 = Quantity(_rat(rng, 1, 9, 4))
        m2 = m1 if rng.random() < 0.3 else Quantity(_rat(rng, 1, 9, 4))
        v1 = draw()
        v2 = (ZERO,) * n if rng.random() < 0.3 else draw()
        while all(a == b for a, b in zip(v1, v2)):
            v2 = draw()
        mb.collision((m1, v1), (m2, v2), vertex=_random_point(rng, dimension), frame=frame)
    if photons:
        mb.add_photon_witnesses(rng)
    mb.add_thex_witnesses()
    return mb.build()


def random_mass_formula_model(rng: random.Random, dimension: int = 4, bodies: int = 2) -> Scenario:
    """Standard model whose bodies have rational rest masses and rational
    (not Pythagorean) velocities, so Lorentz factors are usually surds."""
    n = dimension - 1
    specs = [(Quantity(_rat(rng, 1, 9, 4)), rational_velocity(rng, n)) for _ in range(bodies)]
    observers = [pythagorean_velocity(rng, n) for _ in range(rng.randint(0, 2))]
    return generate_standard_model(
        dimension, observer_velocities=observers, bodies=specs, seed=rng.randrange(2**32), photons=False
    )


# ------------------------------------------------------------------ counterexamples


def _terminal_collision_model(dimension: int = 4) -> Tuple[Scenario, str]:
    """Standard model with one terminal collision whose product has no
    co-moving observer (so its rest mass is undefined)."""
    mb = ModelBuilder(dimension)
    k0 = mb.observer()
    mb.observer((Quantity("3/5"),), relative_to=k0, origin=(0, 2, 1))
    mb.observer((Quantity("-4/5"), Quantity(0), Quantity(0))[: dimension - 1], relative_to=k0, origin=(1, -2, 0))
    v1 = (Quantity("12/13"),)
    v2 = (Quantity(0), Quantity("-3/5"))
    _, _, d = mb.collision((1, v1), (2, v2), vertex=(1, 1, 1), frame=k0)
    rng = random.Random(7)
    mb.add_photon_witnesses(rng)
    mb.add_thex_witnesses()
    return mb.build(), d


def generate_cons_mass_counterexample(dimension: int = 4, factor=2) -> Scenario:
    """Standard model with the outgoing body's mass scaled by ``factor`` for
    every observer.  Its center of mass never enters another collision, so
    the center axioms are unaffected while mass conservation breaks."""
    s, d = _terminal_collision_model(dimension)
    f = _q(factor)
    for k in s.observers:
        s.masses[(k, d)] = s.masses[(k, d)] * f
    return s


def generate_cons_moment_counterexample(dimension: int = 4, factor=3) -> Scenario:
    """Same construction; the outgoing body has nonzero momentum for every
    observer, so scaling its mass breaks momentum conservation."""
    s, d = _terminal_collision_model(dimension)
    f = _q(factor)
    for k in s.observers:
        s.masses[(k, d)] = s.masses[(k, d)] * f
    return s


# ------------------------------------------------------------------ corruption

CORRUPTIONS = ("mass", "velocity", "frame")


def _terminal_products(s: Scenario) -> List[str]:
    out = []
    for c in s.collisions:
        for d in c.outgoing:
            if s.bodies[d].worldline.hi is None:
                out.append(d)
    return out


def corrupt_scenario(s: Scenario, rng: random.Random, mode: Optional[str] = None) -> Tuple[Scenario, str]:
    """Copy of ``s`` perturbed in exactly one way.

    mass:     one observer's mass for an outgoing body
    velocity: direction of an outgoing body (masses left stale)
    frame:    one observer's frame (its world-line follows, masses stale)
    """
    s = s.copy()
    mode = mode or rng.choice(CORRUPTIONS)
    products = _terminal_products(s)
    if mode in ("mass", "velocity") and not products:
        mode = "frame"
    if mode == "mass":
        d = rng.choice(products)
        k = rng.choice(s.observers)
        num = rng.choice([x for x in range(1, 8) if x != 4])
        s.masses[(k, d)] = s.masses[(k, d)] * Quantity(Fraction(num, 4))
    elif mode == "velocity":
        d = rng.choice(products)
        w = s.bodies[d].worldline
        n = s.dimension - 1
        while True:
            delta = [Fraction(rng.randint(-3, 3), rng.randint(8, 20)) for _ in range(n)]
            if any(delta):
                v = tuple(c + Quantity(x) for c, x in zip(w.direction.coords[1:], delta))
                if _speed_ok(v):
                    break
        s.bodies[d] = Body(d, s.bodies[d].kind, Worldline(w.start(), Point((ONE, *v)), ZERO, None))
    elif mode == "frame":
        k = rng.choice(s.observers)
        b = boost_for_velocity(pythagorean_velocity(rng, s.dimension - 1, 2))
        frame = b.compose(s.frames[k])
        s.frames[k] = frame
        s.bodies[k] = Body(k, "observer", observer_worldline(frame))
    else:
        raise ValueError(f"unknown corruption {mode!r}")
    s.invalidate()
    return s, mode


def equivalence_scenario(i: int, seed: int = 0, dimension: int = 3) -> Tuple[str, Scenario]:
    """Scenario i of the seeded batch: even indices valid, odd ones corrupted
    (cycling through the corruption modes)."""
    rng = random.Random(f"equiv:{seed}:{i}")
    s = random_standard_model(rng, dimension, photons=False)
    if i % 2 == 0:
        return "valid", s
    bad, mode = corrupt_scenario(s, rng, CORRUPTIONS[(i // 2) % 3])
    return mode, bad


def equivalence_batch(n: int, seed: int = 0, dimension: int = 3):
    """Deterministic mix of valid and corrupted scenarios.

    Scenario i depends only on (seed, i).  Yields (index, label, scenario).
    """
    for i in range(n):
        label, s = equivalence_scenario(i, seed, dimension)
        yield i, label, s
