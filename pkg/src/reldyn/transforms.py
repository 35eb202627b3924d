"""Affine maps of Q^d, Lorentz boosts and observer-to-observer transforms.

Boost convention (passive): ``boost_for_velocity(v)`` maps world coordinates
to the coordinates of an observer moving with velocity ``v``, so a body of
velocity ``v`` is at rest in the image.  Both frames agree on the origin.
"""

from __future__ import annotations

from typing import Sequence

from .errors import (
    DimensionMismatch,
    NoMedianNeeded,
    SingularMap,
    SpeedNotSubluminal,
    UnknownObserver,
)
from .minkowski import Point, as_point
from .quantity import ONE, ZERO, Quantity


def _q(x):
    return x if isinstance(x, Quantity) or hasattr(x, "sqrt") else Quantity(x)


def _matrix(rows) -> tuple:
    m = tuple(tuple(_q(c) for c in row) for row in rows)
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionMismatch("linear part must be square")
    return m


class AffineMap:
    """p -> L p + t with exact entries."""

    __slots__ = ("linear", "translation")

    def __init__(self, linear, translation=None):
        self.linear = _matrix(linear)
        d = len(self.linear)
        if translation is None:
            translation = (ZERO,) * d
        self.translation = tuple(_q(c) for c in translation)
        if len(self.translation) != d:
            raise DimensionMismatch("translation length differs from matrix size")

    @property
    def dim(self) -> int:
        return len(self.linear)

    # constructors

    @classmethod
    def identity(cls, d: int) -> "AffineMap":
        return cls([[ONE if i == j else ZERO for j in range(d)] for i in range(d)])

    @classmethod
    def translation_by(cls, v) -> "AffineMap":
        v = as_point(v)
        d = v.dim
        return cls(cls.identity(d).linear, v.coords)

    @classmethod
    def scaling(cls, d: int, k) -> "AffineMap":
        k = _q(k)
        return cls([[k if i == j else ZERO for j in range(d)] for i in range(d)])

    # algebra

    def apply_linear(self, v) -> Point:
        v = as_point(v)
        if v.dim != self.dim:
            raise DimensionMismatch(f"map acts on Q^{self.dim}, got a {v.dim}-tuple")
        out = []
        for row in self.linear:
            acc = ZERO
            for a, x in zip(row, v.coords):
                if not (a.is_zero() if hasattr(a, "is_zero") else a == 0):
                    acc = acc + a * x
            out.append(acc)
        return Point._raw(tuple(out))

    def apply(self, p) -> Point:
        lp = self.apply_linear(p)
        return Point(a + b for a, b in zip(lp.coords, self.translation))

    def __call__(self, p) -> Point:
        return self.apply(p)

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self after other."""
        if other.dim != self.dim:
            raise DimensionMismatch("cannot compose maps of different dimension")
        cols = list(zip(*other.linear))
        lin = [[_dot(row, col) for col in cols] for row in self.linear]
        trans = self.apply(Point(other.translation)).coords
        cls = PoincareMap if isinstance(self, PoincareMap) and isinstance(other, PoincareMap) else AffineMap
        return cls._raw(lin, trans)

    def __matmul__(self, other):
        return self.compose(other)

    def det(self) -> Quantity:
        m = [list(row) for row in self.linear]
        n = len(m)
        det = ONE
        for col in range(n):
            piv = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
            if piv is None:
                return ZERO
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = -det
            p = m[col][col]
            det = det * p
            inv = 1 / p
            for r in range(col + 1, n):
                f = m[r][col]
                if f.is_zero():
                    continue
                f = f * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
        return det

    def inverse(self) -> "AffineMap":
        n = self.dim
        aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(self.linear)]
        for col in range(n):
            piv = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
            if piv is None:
                raise SingularMap("linear part is not invertible")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [a * inv for a in aug[col]]
            for r in range(n):
                if r != col and not aug[r][col].is_zero():
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
        lin = [row[n:] for row in aug]
        return _with_inverse_translation(AffineMap, lin, self.translation)

    def is_invertible(self) -> bool:
        return not self.det().is_zero()

    def __eq__(self, other):
        if not isinstance(other, AffineMap):
            return NotImplemented
        return self.linear == other.linear and self.translation == other.translation

    __hash__ = None

    def __repr__(self):
        rows = "; ".join(" ".join(str(c) for c in row) for row in self.linear)
        trans = " ".join(str(c) for c in self.translation)
        return f"{type(self).__name__}([{rows}] + [{trans}])"

    @classmethod
    def _raw(cls, linear, translation):
        obj = object.__new__(cls)
        obj.linear = tuple(tuple(row) for row in linear)
        obj.translation = tuple(translation)
        return obj


def _dot(a, b):
    acc = ZERO
    for x, y in zip(a, b):
        acc = acc + x * y
    return acc


def _with_inverse_translation(cls, lin, translation):
    # inverse of p -> Lp + t is p -> L^-1 p - L^-1 t
    m = cls._raw(lin, (ZERO,) * len(lin))
    t = m.apply_linear(Point(translation))
    return cls._raw(lin, (-c for c in t.coords))


def _eta_form(lin) -> list:
    """L^T eta L as nested lists."""
    n = len(lin)
    cols = list(zip(*lin))
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = cols[i][0] * cols[j][0]
            for r in range(1, n):
                acc = acc - cols[i][r] * cols[j][r]
            row.append(acc)
        out.append(row)
    return out


def is_poincare(f: AffineMap) -> bool:
    """True iff the linear part preserves the Minkowski form."""
    form = _eta_form(f.linear)
    n = len(form)
    for i in range(n):
        for j in range(n):
            want = 0 if i != j else (1 if i == 0 else -1)
            if not (form[i][j] == want):
                return False
    return True


class PoincareMap(AffineMap):
    """An affine map known to preserve Minkowski distance."""

    __slots__ = ()

    def __init__(self, linear, translation=None, check=True):
        super().__init__(linear, translation)
        if check and not is_poincare(self):
            raise ValueError("linear part does not preserve the Minkowski form")

    @classmethod
    def of(cls, f: AffineMap) -> "PoincareMap":
        if not is_poincare(f):
            raise ValueError("map is not a Poincaré transformation")
        return cls._raw(f.linear, f.translation)

    @classmethod
    def identity(cls, d: int) -> "PoincareMap":
        return cls._raw(AffineMap.identity(d).linear, (ZERO,) * d)

    @classmethod
    def translation_by(cls, v) -> "PoincareMap":
        v = as_point(v)
        return cls._raw(AffineMap.identity(v.dim).linear, v.coords)

    def inverse(self) -> "PoincareMap":
        # L^-1 = eta L^T eta
        n = self.dim
        lin = []
        for i in range(n):
            row = []
            for j in range(n):
                c = self.linear[j][i]
                if (i == 0) != (j == 0):
                    c = -c
                row.append(c)
            lin.append(row)
        return _with_inverse_translation(PoincareMap, lin, self.translation)


# ------------------------------------------------------------------ boosts


def _vec(v) -> tuple:
    return tuple(_q(c) for c in v)


def speed_squared(v) -> Quantity:
    return _dot(_vec(v), _vec(v))


def gamma(v) -> Quantity:
    s2 = speed_squared(v)
    if not s2 < 1:
        raise SpeedNotSubluminal(f"speed^2 = {s2} is not below 1")
    return (1 / (1 - s2)).sqrt()


def boost_for_velocity(v) -> PoincareMap:
    """The passive boost to the frame co-moving with velocity ``v``."""
    v = _vec(v)
    d = len(v) + 1
    s2 = speed_squared(v)
    if not s2 < 1:
        raise SpeedNotSubluminal(f"speed^2 = {s2} is not below 1")
    if s2.is_zero():
        return PoincareMap.identity(d)
    g = (1 / (1 - s2)).sqrt()
    k = (g - 1) / s2
    lin = [[g] + [-g * c for c in v]]
    for i in range(1, d):
        row = [-g * v[i - 1]]
        for j in range(1, d):
            row.append((ONE if i == j else ZERO) + k * v[i - 1] * v[j - 1])
        lin.append(row)
    return PoincareMap._raw(lin, (ZERO,) * d)


def time_dilation_factor(speed) -> Quantity:
    speed = _q(speed)
    if speed < 0 or not speed < 1:
        raise SpeedNotSubluminal(f"speed {speed} outside [0, 1)")
    return (1 - speed * speed).sqrt()


def velocity_of_direction(direction) -> tuple:
    """Space part over time part of a non-horizontal direction."""
    direction = as_point(direction)
    t = direction.time
    return tuple(c / t for c in direction.coords[1:])


def transformed_velocity(f: AffineMap, v) -> tuple:
    """Velocity seen through ``f`` of a body with velocity ``v``."""
    return velocity_of_direction(f.apply_linear(Point((ONE, *_vec(v)))))


def median_velocity(u, v) -> tuple:
    """Velocity of the frame in which ``u`` and ``v`` become opposite.

    This is the rest frame of the sum of the two unit four-velocities:
    w = (g_u u + g_v v) / (g_u + g_v).
    """
    u, v = _vec(u), _vec(v)
    if len(u) != len(v):
        raise DimensionMismatch("velocities of different dimension")
    gu, gv = gamma(u), gamma(v)
    total = gu + gv
    return tuple((gu * a + gv * b) / total for a, b in zip(u, v))


def median_observer_boost(u, v) -> PoincareMap:
    u, v = _vec(u), _vec(v)
    gamma(u)
    gamma(v)
    if all(a == b for a, b in zip(u, v)):
        if all(a.is_zero() for a in u):
            return PoincareMap.identity(len(u) + 1)
        raise NoMedianNeeded("equal nonzero velocities cannot be made opposite")
    if all((a + b).is_zero() for a, b in zip(u, v)):
        return PoincareMap.identity(len(u) + 1)
    return boost_for_velocity(median_velocity(u, v))


def rotation_from_skew(skew: Sequence[Sequence]) -> tuple:
    """Cayley transform (I - A)^-1 (I + A) of a skew-symmetric A.

    Gives an orthogonal matrix with entries in the field of A.
    """
    a = _matrix(skew)
    n = len(a)
    eye = AffineMap.identity(n).linear
    minus = AffineMap([[eye[i][j] - a[i][j] for j in range(n)] for i in range(n)]).inverse()
    plus = AffineMap([[eye[i][j] + a[i][j] for j in range(n)] for i in range(n)])
    return minus.compose(plus).linear


def spatial_rotation(skew) -> PoincareMap:
    """Poincaré map rotating space by the Cayley rotation of ``skew``."""
    r = rotation_from_skew(skew)
    d = len(r) + 1
    lin = [[ONE] + [ZERO] * (d - 1)]
    for row in r:
        lin.append([ZERO, *row])
    return PoincareMap._raw(lin, (ZERO,) * d)


def worldview_transform(scenario, k, h) -> PoincareMap:
    """Map from k's coordinates to h's coordinates (same events)."""
    frames = scenario.frames
    for obs in (k, h):
        if obs not in frames:
            raise UnknownObserver(obs)
    fk, fh = frames[k], frames[h]
    if k == h:
        return PoincareMap.identity(fk.dim) if isinstance(fk, PoincareMap) else AffineMap.identity(fk.dim)
    return fh.compose(fk.inverse())
