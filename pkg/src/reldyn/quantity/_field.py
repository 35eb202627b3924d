"""Raw arithmetic in the square-root closure of the rationals.

Values come in three shapes:

* ``mpq`` (gmpy2 rationals) for rationals;
* ``MQ`` for irrational elements of the multiquadratic base field
  Q(sqrt 2, sqrt 3, sqrt 5, ...), stored as ``sum c_m * sqrt(m)`` over
  squarefree ``m``;
* ``Ext`` for elements that need a nested radical.  The process-wide level
  registry holds radicands ``r_0, r_1, ...``; ``Ext(i, a, b)`` is
  ``a + b*sqrt(r_i)`` with ``a`` and ``b`` living strictly below level ``i``.

Every rational square root is a base-field element, so nested levels only
appear for radicands like ``2 + 2*sqrt(5)/5``.  Before a level is adjoined
the radicand is tested for being a square in the field generated by the
levels it depends on, so towers stay non-redundant in practice.  Signs are
decided exactly (interval arithmetic first, symbolic recursion on ties), and
equality is always decided by the sign of the difference, so correctness does
not rely on representations being unique.
"""

from __future__ import annotations

import threading
from gmpy2 import is_square, mpq as Fraction
from functools import lru_cache
from math import gcd, isqrt

ZERO = Fraction(0)
ONE = Fraction(1)
TWO = Fraction(2)

_LOCK = threading.RLock()

# squarefree key -> its sorted prime factors
_PRIMES: dict[int, tuple[int, ...]] = {1: ()}
_KNOWN_PRIMES: set = set()


class MQ:
    __slots__ = ("terms", "_hash", "_sign", "_iv", "_support")

    def __init__(self, terms):
        self.terms = terms
        self._hash = None
        self._sign = None
        self._iv = None
        self._support = None

    def __eq__(self, other):
        return type(other) is MQ and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __repr__(self):
        return f"MQ({self.terms!r})"


class Ext:
    __slots__ = ("level", "a", "b", "_hash", "_sign", "_iv", "_closure")

    def __init__(self, level, a, b):
        self.level = level
        self.a = a
        self.b = b
        self._hash = None
        self._sign = None
        self._iv = None
        self._closure = None

    def __eq__(self, other):
        return (
            type(other) is Ext
            and self.level == other.level
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.level, self.a, self.b))
        return self._hash

    def __repr__(self):
        return f"Ext({self.level}, {self.a!r}, {self.b!r})"


class Level:
    __slots__ = ("index", "radicand", "deps", "alias", "_iv")

    def __init__(self, index, radicand, deps):
        self.index = index
        self.radicand = radicand
        self.deps = deps
        # set once the level is found to be redundant: sqrt(radicand) == alias
        self.alias = None
        self._iv = {}


_LEVELS: list[Level] = []
_BY_RADICAND: dict = {}
_BY_SUPPORT: dict = {}


def level_count() -> int:
    return len(_LEVELS)


def level_radicand(i: int):
    return _LEVELS[i].radicand


def lev(x) -> int:
    return x.level if type(x) is Ext else -1


def is_struct_zero(x) -> bool:
    return type(x) is Fraction and not x


# ---------------------------------------------------------------- base field


def _register(key: int, primes) -> None:
    if key not in _PRIMES:
        _PRIMES[key] = tuple(sorted(primes))
        _KNOWN_PRIMES.update(primes)


def _key_product(m1: int, m2: int):
    g = gcd(m1, m2)
    key = (m1 // g) * (m2 // g)
    if key not in _PRIMES:
        _register(key, set(_PRIMES[m1]) ^ set(_PRIMES[m2]))
    return key, g


def _from_terms(d: dict):
    items = sorted((m, c) for m, c in d.items() if c)
    if not items:
        return ZERO
    if len(items) == 1 and items[0][0] == 1:
        return items[0][1]
    return MQ(tuple(items))


def _terms(x) -> dict:
    if type(x) is Fraction:
        return {1: x} if x else {}
    return dict(x.terms)


def base_add(x, y):
    if type(x) is Fraction and type(y) is Fraction:
        return x + y
    d = _terms(x)
    for m, c in _terms(y).items():
        d[m] = d.get(m, ZERO) + c
    return _from_terms(d)


def base_neg(x):
    if type(x) is Fraction:
        return -x
    return MQ(tuple((m, -c) for m, c in x.terms))


def base_mul(x, y):
    tx, ty = type(x), type(y)
    if tx is Fraction and ty is Fraction:
        return x * y
    if tx is Fraction:
        x, y = y, x
        tx, ty = ty, tx
    if ty is Fraction:
        if not y:
            return ZERO
        if y == 1:
            return x
        return MQ(tuple((m, c * y) for m, c in x.terms))
    d: dict = {}
    for m1, c1 in x.terms:
        for m2, c2 in y.terms:
            key, g = _key_product(m1, m2)
            d[key] = d.get(key, ZERO) + c1 * c2 * g
    return _from_terms(d)


def support_primes(x) -> frozenset:
    if type(x) is Fraction:
        return frozenset()
    if x._support is None:
        s = set()
        for m, _ in x.terms:
            s.update(_PRIMES[m])
        x._support = frozenset(s)
    return x._support


def split(x, p: int):
    """Write a base element as ``A + B*sqrt(p)`` with ``p`` absent from A, B."""
    a: dict = {}
    b: dict = {}
    for m, c in _terms(x).items():
        if m % p == 0:
            b[m // p] = c
        else:
            a[m] = c
    return _from_terms(a), _from_terms(b)


def times_sqrt_p(x, p: int):
    """``x * sqrt(p)`` for ``x`` whose support excludes ``p``."""
    d = {}
    for m, c in _terms(x).items():
        key = m * p
        if key not in _PRIMES:
            _register(key, _PRIMES[m] + (p,))
        d[key] = c
    return _from_terms(d)


@lru_cache(maxsize=65536)
def base_inv(x):
    if type(x) is Fraction:
        if not x:
            raise ZeroDivisionError("division by zero")
        return 1 / x
    p = max(support_primes(x))
    a, b = split(x, p)
    norm = base_add(base_mul(a, a), base_neg(base_mul(base_mul(b, b), Fraction(p))))
    inv_norm = base_inv(norm)
    conj = base_add(a, base_neg(times_sqrt_p(b, p)))
    return base_mul(conj, inv_norm)


@lru_cache(maxsize=65536)
def squarefree_decomposition(n: int):
    """Return ``(s, k)`` with ``n == s * k**2`` and ``s`` squarefree (n > 0)."""
    r = isqrt(n)
    if r * r == n:
        _register(1, ())
        return 1, r
    from sympy import factorint

    s = 1
    k = 1
    primes = []
    for p, e in factorint(n).items():
        k *= p ** (e // 2)
        if e % 2:
            s *= p
            primes.append(p)
    _register(s, primes)
    return s, k


# Inside a denesting attempt, integers above this size are not factored: a
# root there may only use primes already in play, anything else means no root.
_FACTOR_BITS = 64


def _known_prime_split(m: int):
    """``(s, k)`` with ``m == s * k**2`` when every prime of odd exponent in
    ``m`` is already registered, else ``None``."""
    known = tuple(sorted(_KNOWN_PRIMES))
    s = k = 1
    for p in known:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        k *= p ** (e // 2)
        if e % 2:
            s *= p
    if not is_square(m):
        return None
    _register(s, [p for p in known if s % p == 0])
    return s, k * isqrt(m)


@lru_cache(maxsize=65536)
def sqrt_base(x, excluded: frozenset = frozenset()):
    """Nonnegative square root of ``x`` inside the base field with the primes
    in ``excluded`` removed, or ``None`` when there is none."""
    if type(x) is Fraction:
        if x < 0:
            return None
        if not x:
            return ZERO
        n, d = x.numerator, x.denominator
        m = int(n * d)
        if excluded and m.bit_length() > _FACTOR_BITS:
            split_known = _known_prime_split(m)
            if split_known is None:
                return None
            s, k = split_known
        else:
            s, k = squarefree_decomposition(m)
        if excluded and any(p in excluded for p in _PRIMES[s]):
            return None
        return _from_terms({s: Fraction(k, d)})
    if sign(x) < 0:
        return None
    p = max(support_primes(x))
    sub_excluded = excluded | {p}
    a, b = split(x, p)
    norm = base_add(base_mul(a, a), base_neg(base_mul(base_mul(b, b), Fraction(p))))
    root_norm = sqrt_base(norm, sub_excluded)
    if root_norm is None:
        return None
    for cand in (base_add(a, root_norm), base_add(a, base_neg(root_norm))):
        c = sqrt_base(base_mul(cand, Fraction(1, 2)), sub_excluded)
        if c is None or is_struct_zero(c):
            continue
        e = base_mul(b, base_inv(base_mul(c, TWO)))
        root = base_add(c, times_sqrt_p(e, p))
        if sign(root) < 0:
            root = base_neg(root)
        return root
    return None


# ---------------------------------------------------------------- tower


def _ext(level: int, a, b):
    if is_struct_zero(b):
        return a
    alias = _LEVELS[level].alias
    if alias is not None:
        return add(a, mul(b, alias))
    return Ext(level, a, b)


def add(x, y):
    lx, ly = lev(x), lev(y)
    if lx < 0 and ly < 0:
        return base_add(x, y)
    if lx == ly:
        return _ext(lx, add(x.a, y.a), add(x.b, y.b))
    if lx > ly:
        return Ext(lx, add(x.a, y), x.b)
    return Ext(ly, add(x, y.a), y.b)


def neg(x):
    if type(x) is Ext:
        return Ext(x.level, neg(x.a), neg(x.b))
    return base_neg(x)


def sub(x, y):
    return add(x, neg(y))


def mul(x, y):
    lx, ly = lev(x), lev(y)
    if lx < 0 and ly < 0:
        return base_mul(x, y)
    if lx == ly:
        r = _LEVELS[lx].radicand
        a, b, c, e = x.a, x.b, y.a, y.b
        return _ext(lx, add(mul(a, c), mul(mul(b, e), r)), add(mul(a, e), mul(b, c)))
    if lx < ly:
        x, y = y, x
        lx, ly = ly, lx
    if is_struct_zero(y):
        return ZERO
    return _ext(lx, mul(x.a, y), mul(x.b, y))


def inv(x):
    if type(x) is not Ext:
        return base_inv(x)
    a, b = x.a, x.b
    r = _LEVELS[x.level].radicand
    norm = sub(mul(a, a), mul(mul(b, b), r))
    if is_zero(norm):
        # a**2 == b**2 * r: either x == 0 or the level is redundant
        if sign(x) == 0:
            raise ZeroDivisionError("division by zero")
        _record_alias(x.level, a, b)
        return inv(add(a, mul(b, _LEVELS[x.level].alias)))
    inv_norm = inv(norm)
    return _ext(x.level, mul(a, inv_norm), neg(mul(b, inv_norm)))


def div(x, y):
    return mul(x, inv(y))


def _record_alias(level: int, a, b) -> None:
    """Remember sqrt(r) as an element below ``level`` once a**2 == b**2 r."""
    lv = _LEVELS[level]
    if lv.alias is not None or sign(b) == 0:
        return
    root = div(a, b)
    if sign(root) < 0:
        root = neg(root)
    with _LOCK:
        if lv.alias is None:
            lv.alias = root


def is_zero(x) -> bool:
    t = type(x)
    if t is Fraction:
        return not x
    if t is MQ:
        return False
    if sign(x) != 0:
        return False
    if sign(x.b) != 0:
        # a + b*sqrt(r) == 0 with b != 0 exposes sqrt(r) = -a/b
        _record_alias(x.level, neg(x.a), x.b)
    return True


# ---------------------------------------------------------------- intervals


def _frac_interval(x: Fraction, p: int):
    n, d = x.numerator, x.denominator
    return (n << p) // d, -((-n << p) // d)


def _mq_interval(x: MQ, p: int):
    lo = hi = 0
    for m, c in x.terms:
        n, d = c.numerator, c.denominator
        if m == 1:
            lo += (n << p) // d
            hi += -((-n << p) // d)
            continue
        s_lo = isqrt(m << (2 * p))
        s_hi = s_lo if s_lo * s_lo == m << (2 * p) else s_lo + 1
        if n > 0:
            lo += (n * s_lo) // d
            hi += -((-n * s_hi) // d)
        else:
            lo += (n * s_hi) // d
            hi += -((-n * s_lo) // d)
    return lo, hi


_GUARD = 12


def _root_interval(level: int, p: int):
    lv = _LEVELS[level]
    cached = lv._iv.get(p)
    if cached is None:
        r_lo, r_hi = interval(lv.radicand, p)
        lo = isqrt(max(r_lo, 0) << p)
        hi = isqrt(max(r_hi, 0) << p) + 1
        cached = (lo, hi)
        lv._iv[p] = cached
    return cached


def interval(x, p: int):
    """Integers ``(lo, hi)`` with ``lo <= x * 2**p <= hi``."""
    t = type(x)
    if t is Fraction:
        return _frac_interval(x, p)
    if x._iv is not None and x._iv[0] == p:
        return x._iv[1], x._iv[2]
    if t is MQ:
        lo, hi = _mq_interval(x, p)
    else:
        wp = p + _GUARD
        a_lo, a_hi = interval(x.a, wp)
        b_lo, b_hi = interval(x.b, wp)
        r_lo, r_hi = _root_interval(x.level, wp)
        prods = (b_lo * r_lo, b_lo * r_hi, b_hi * r_lo, b_hi * r_hi)
        p_lo = min(prods) >> wp
        p_hi = -((-max(prods)) >> wp)
        lo = (a_lo + p_lo) >> _GUARD
        hi = -((-(a_hi + p_hi)) >> _GUARD)
    x._iv = (p, lo, hi)
    return lo, hi


# ---------------------------------------------------------------- sign

_PRECISIONS = (64, 192, 512)


def _sign_rule(a, b, r) -> int:
    """Exact sign of ``a + b*sqrt(r)`` for ``r > 0``."""
    sa, sb = sign(a), sign(b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb if sa == 0 else sa
    return sa * sign(sub(mul(a, a), mul(mul(b, b), r)))


def sign(x) -> int:
    t = type(x)
    if t is Fraction:
        return (x > 0) - (x < 0)
    if x._sign is not None:
        return x._sign
    s = None
    for p in _PRECISIONS:
        lo, hi = interval(x, p)
        if lo > 0:
            s = 1
            break
        if hi < 0:
            s = -1
            break
    if s is None:
        if t is MQ:
            p = max(support_primes(x))
            a, b = split(x, p)
            s = _sign_rule(a, b, Fraction(p))
        else:
            s = _sign_rule(x.a, x.b, _LEVELS[x.level].radicand)
    x._sign = s
    return s


# ---------------------------------------------------------------- square roots


def closure(x) -> frozenset:
    """Nested levels used by ``x``, closed under radicand dependencies."""
    if type(x) is not Ext:
        return frozenset()
    if x._closure is None:
        x._closure = (
            frozenset((x.level,)) | _LEVELS[x.level].deps | closure(x.a) | closure(x.b)
        )
    return x._closure


def _sqrt_sub(x, levels: tuple):
    """Nonnegative root of ``x`` inside the field generated by ``levels``
    (a dependency-closed, sorted tuple of level indices), or ``None``."""
    s = sign(x)
    if s < 0:
        return None
    if s == 0:
        return ZERO
    if not levels:
        return sqrt_base(x)
    top, rest = levels[-1], levels[:-1]
    r = _LEVELS[top].radicand
    if lev(x) < top:
        root = _sqrt_sub(x, rest)
        if root is not None:
            return root
        y = _sqrt_sub(div(x, r), rest)
        if y is not None:
            return _ext(top, ZERO, y)
        return None
    a, b = x.a, x.b
    norm = sub(mul(a, a), mul(mul(b, b), r))
    root_norm = _sqrt_sub(norm, rest)
    if root_norm is None:
        return None
    for cand in (add(a, root_norm), sub(a, root_norm)):
        c = _sqrt_sub(mul(cand, Fraction(1, 2)), rest)
        if c is None or is_zero(c):
            continue
        e = div(b, mul(c, TWO))
        root = _ext(top, c, e)
        if sign(root) < 0:
            root = neg(root)
        return root
    return None


_SQRT_CACHE: dict = {}


def _base_norm(x, primes):
    """Product of the conjugates of a base element over ``primes``; a rational
    number, multiplicative in ``x``."""
    for p in sorted(primes, reverse=True):
        if type(x) is Fraction:
            x = x * x
            continue
        a, b = split(x, p)
        x = base_add(base_mul(a, a), base_neg(base_mul(base_mul(b, b), Fraction(p))))
    return x


def _is_rational_square(q) -> bool:
    if q < 0:
        return False
    return is_square(q.numerator) and is_square(q.denominator)


def sqrt(x):
    """Nonnegative square root; adjoins a new level when needed."""
    cached = _SQRT_CACHE.get(x)
    if cached is not None:
        return cached
    s = sign(x)
    if s < 0:
        raise ValueError("negative radicand")
    if s == 0:
        return ZERO
    with _LOCK:
        root = _sqrt_uncached(x)
        _SQRT_CACHE[x] = root
    return root


def _sqrt_uncached(x):
    levels = tuple(sorted(closure(x)))
    root = _sqrt_sub(x, levels)
    if root is not None:
        return root
    # a multiple of an existing radicand by a square is a cheap reuse.  For
    # base-field radicands only levels over the same primes are tried, and a
    # norm test screens them; any dependency missed here is still caught
    # exactly (and aliased) by the sign rule.
    have = set(levels)
    if type(x) is MQ:
        support = support_primes(x)
        nx = _base_norm(x, support)
        pool = [_LEVELS[i] for i in _BY_SUPPORT.get(support, ())]
    else:
        pool = _LEVELS
    for lv in pool:
        if lv.index in have or lv.alias is not None or not lv.deps <= have:
            continue
        if type(x) is MQ and not _is_rational_square(nx / _base_norm(lv.radicand, support)):
            continue
        y = _sqrt_sub(div(x, lv.radicand), levels)
        if y is not None:
            return mul(y, Ext(lv.index, ZERO, ONE))
    # pull a rational factor out so radicands look like 1 + c*sqrt(m) + ...
    scale = ONE
    radicand = x
    if type(x) is MQ:
        scale = abs(x.terms[0][1])
        radicand = base_mul(x, 1 / scale)
    known = _BY_RADICAND.get(radicand)
    if known is None:
        known = len(_LEVELS)
        _LEVELS.append(Level(known, radicand, closure(radicand)))
        _BY_RADICAND[radicand] = known
        if type(radicand) is MQ:
            _BY_SUPPORT.setdefault(support_primes(radicand), []).append(known)
    return mul(sqrt_base(scale), Ext(known, ZERO, ONE))
