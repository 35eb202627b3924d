"""Double-precision stand-in for Quantity, for speed comparisons only.

Comparisons treat values within ``TOLERANCE`` of each other as equal.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..errors import DivisionByZero, NegativeRadicand

TOLERANCE = 1e-9


def _f(value):
    if isinstance(value, FloatQuantity):
        return value.v
    if isinstance(value, (int, float, Fraction)):
        return float(value)
    # exact Quantity or anything with __float__
    try:
        return float(value)
    except (TypeError, ValueError):
        return None


class FloatQuantity:
    __slots__ = ("v",)

    def __init__(self, value=0.0):
        if isinstance(value, str):
            from .core import Quantity

            value = Quantity(value)
        v = _f(value)
        if v is None:
            raise TypeError(f"cannot convert {type(value).__name__}")
        self.v = v

    def __add__(self, o):
        o = _f(o)
        return NotImplemented if o is None else FloatQuantity(self.v + o)

    __radd__ = __add__

    def __sub__(self, o):
        o = _f(o)
        return NotImplemented if o is None else FloatQuantity(self.v - o)

    def __rsub__(self, o):
        o = _f(o)
        return NotImplemented if o is None else FloatQuantity(o - self.v)

    def __mul__(self, o):
        o = _f(o)
        return NotImplemented if o is None else FloatQuantity(self.v * o)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _f(o)
        if o is None:
            return NotImplemented
        if abs(o) <= TOLERANCE:
            raise DivisionByZero("division by (near) zero")
        return FloatQuantity(self.v / o)

    def __rtruediv__(self, o):
        o = _f(o)
        if o is None:
            return NotImplemented
        if abs(self.v) <= TOLERANCE:
            raise DivisionByZero("division by (near) zero")
        return FloatQuantity(o / self.v)

    def __neg__(self):
        return FloatQuantity(-self.v)

    def __abs__(self):
        return FloatQuantity(abs(self.v))

    def __pow__(self, n):
        return FloatQuantity(self.v**n)

    def inv(self):
        return 1 / self

    def sqrt(self):
        if self.v < -TOLERANCE:
            raise NegativeRadicand(f"square root of negative value {self.v}")
        return FloatQuantity(math.sqrt(max(self.v, 0.0)))

    def sign(self) -> int:
        if abs(self.v) <= TOLERANCE:
            return 0
        return 1 if self.v > 0 else -1

    def is_zero(self) -> bool:
        return self.sign() == 0

    def __bool__(self):
        return not self.is_zero()

    def _cmp(self, o):
        o = _f(o)
        if o is None:
            return None
        d = self.v - o
        if abs(d) <= TOLERANCE:
            return 0
        return 1 if d > 0 else -1

    def __eq__(self, o):
        c = self._cmp(o)
        return NotImplemented if c is None else c == 0

    def __ne__(self, o):
        c = self._cmp(o)
        return NotImplemented if c is None else c != 0

    def __lt__(self, o):
        c = self._cmp(o)
        return NotImplemented if c is None else c < 0

    def __le__(self, o):
        c = self._cmp(o)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, o):
        c = self._cmp(o)
        return NotImplemented if c is None else c > 0

    def __ge__(self, o):
        c = self._cmp(o)
        return NotImplemented if c is None else c >= 0

    def __hash__(self):
        return hash(round(self.v, 6))

    def __float__(self):
        return self.v

    def approx(self, digits: int = 6) -> str:
        return f"{self.v:.{digits}f}"

    def literal(self) -> str:
        return repr(self.v)

    def __str__(self):
        return repr(self.v)

    def __repr__(self):
        return f"FloatQuantity({self.v!r})"
