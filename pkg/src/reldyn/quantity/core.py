from __future__ import annotations

import enum
from fractions import Fraction

from gmpy2 import mpq

from ..errors import DivisionByZero, NegativeRadicand, ParseError
from . import _field as F
from .literal import LiteralError, parse_raw, to_literal


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def _raw(value):
    t = type(value)
    if t is Quantity:
        return value._r
    if t is mpq:
        return value
    if t is int or t is bool:
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, int):
        return mpq(int(value))
    return None


class Quantity:
    """An exact real number built from rationals by field operations and
    square roots.

    Accepts ints, Fractions, other Quantities and literal strings such as
    ``"3*sqrt(2)/2"``.  Floats are refused on purpose.
    """

    __slots__ = ("_r", "_hash")

    def __init__(self, value=0):
        r = _raw(value)
        if r is None:
            if isinstance(value, str):
                try:
                    r = parse_raw(value)
                except LiteralError as exc:
                    raise ParseError(f"bad quantity literal {value!r}: {exc}") from None
            else:
                raise TypeError(f"cannot make an exact Quantity from {type(value).__name__}")
        self._r = r
        self._hash = None

    @classmethod
    def _wrap(cls, r) -> "Quantity":
        q = object.__new__(cls)
        q._r = r
        q._hash = None
        return q

    # -- arithmetic

    def __add__(self, other):
        a = self._r
        o = other._r if type(other) is Quantity else _raw(other)
        if o is None:
            return NotImplemented
        if type(a) is mpq and type(o) is mpq:
            return Quantity._wrap(a + o)
        return Quantity._wrap(F.add(self._r, o))

    __radd__ = __add__

    def __sub__(self, other):
        a = self._r
        o = other._r if type(other) is Quantity else _raw(other)
        if o is None:
            return NotImplemented
        if type(a) is mpq and type(o) is mpq:
            return Quantity._wrap(a - o)
        return Quantity._wrap(F.sub(self._r, o))

    def __rsub__(self, other):
        o = _raw(other)
        if o is None:
            return NotImplemented
        return Quantity._wrap(F.sub(o, self._r))

    def __mul__(self, other):
        a = self._r
        o = other._r if type(other) is Quantity else _raw(other)
        if o is None:
            return NotImplemented
        if type(a) is mpq and type(o) is mpq:
            return Quantity._wrap(a * o)
        return Quantity._wrap(F.mul(self._r, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _raw(other)
        if o is None:
            return NotImplemented
        return Quantity._wrap(_div(self._r, o))

    def __rtruediv__(self, other):
        o = _raw(other)
        if o is None:
            return NotImplemented
        return Quantity._wrap(_div(o, self._r))

    def __neg__(self):
        return Quantity._wrap(F.neg(self._r))

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return 1 / (self ** -n)
        result = Quantity._wrap(F.ONE)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inv(self) -> "Quantity":
        return Quantity._wrap(_div(F.ONE, self._r))

    def sqrt(self) -> "Quantity":
        if F.sign(self._r) < 0:
            raise NegativeRadicand(f"square root of negative quantity {self}")
        return Quantity._wrap(F.sqrt(self._r))

    # -- order

    def sign(self) -> int:
        if type(self._r) is mpq:
            r = self._r
            return (r > 0) - (r < 0)
        return -1 if F.sign(self._r) < 0 else (0 if F.is_zero(self._r) else 1)

    def is_zero(self) -> bool:
        return F.is_zero(self._r)

    def __bool__(self):
        return not self.is_zero()

    def _cmp(self, other):
        o = _raw(other)
        if o is None:
            return None
        a = self._r
        if type(a) is mpq and type(o) is mpq:
            return (a > o) - (a < o)
        if a == o:
            return 0
        d = F.sub(a, o)
        if F.is_zero(d):
            return 0
        return F.sign(d)

    def __eq__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c == 0

    def __ne__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c != 0

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __hash__(self):
        # floor(x * 2**32) is a function of the real value alone
        if self._hash is None:
            self._hash = hash(_floor_scaled(self._r, 32))
        return self._hash

    # -- conversion

    def is_rational(self) -> bool:
        return type(self._r) is mpq

    def to_fraction(self) -> Fraction:
        if type(self._r) is not mpq:
            raise ValueError(f"{self} is irrational")
        return Fraction(int(self._r.numerator), int(self._r.denominator))

    def __float__(self):
        if type(self._r) is mpq:
            return float(self._r)
        lo, hi = F.interval(self._r, 64)
        return float(mpq(int(lo) + int(hi), 2**65))

    def approx(self, digits: int = 6) -> str:
        return approx(self, digits)

    def literal(self) -> str:
        return to_literal(self._r)

    def __str__(self):
        return to_literal(self._r)

    def __repr__(self):
        return f"Quantity({to_literal(self._r)!r})"


def _div(a, b):
    if F.is_zero(b):
        raise DivisionByZero("division by zero")
    return F.div(a, b)


def _floor_scaled(r, bits: int) -> int:
    """Exact floor(r * 2**bits)."""
    if type(r) is mpq:
        return int((r.numerator << bits) // r.denominator)
    p = bits + 32
    while True:
        lo, hi = F.interval(r, p)
        k_lo = lo >> (p - bits)
        k_hi = hi >> (p - bits)
        if k_lo == k_hi:
            return k_lo
        if p > bits + 512:
            break
        p *= 2
    # r * 2**bits sits on (or extremely near) the integer k_hi
    scaled = F.mul(r, mpq(2**bits))
    return k_hi if F.sign(F.sub(scaled, mpq(k_hi))) >= 0 else k_hi - 1


def approx(x, digits: int = 6) -> str:
    """Decimal rounding of ``x`` to ``digits`` places (ties round up)."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    r = _raw(x)
    if r is None:
        r = Quantity(x)._r
    scale = mpq(10**digits)
    shifted = F.add(F.mul(r, scale), mpq(1, 2))
    if type(shifted) is mpq:
        k = int(shifted.numerator // shifted.denominator)
    else:
        k = _floor_scaled(shifted, 0)
    neg = k < 0
    k = abs(k)
    whole, frac = divmod(k, 10**digits)
    text = f"{whole}.{frac:0{digits}d}"
    return "-" + text if neg and k else text


def sqrt(x) -> Quantity:
    return (x if isinstance(x, Quantity) else Quantity(x)).sqrt()


def cmp(a, b) -> Ordering:
    a = a if isinstance(a, Quantity) else Quantity(a)
    return Ordering(a._cmp(b))
