"""Quantity literals: integers, ``p/q``, decimals, ``sqrt(...)`` and + - * /.

``to_literal`` prints a raw value so that ``parse_raw(to_literal(x))`` gives
back the same value.
"""

from __future__ import annotations

import re
from gmpy2 import mpq as Fraction

from . import _field as F

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|(sqrt)|([-+*/()·−]))")


class LiteralError(ValueError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise LiteralError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("num", m.group(1), start))
        elif m.group(2):
            out.append(("sqrt", "sqrt", start))
        else:
            op = {"·": "*", "−": "-"}.get(m.group(3), m.group(3))
            out.append(("op", op, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind, value=None):
        tok = self.tokens[self.i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            raise LiteralError(f"expected {want!r}", tok[2])
        self.i += 1
        return tok

    def expr(self):
        v = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take("op")[1]
            rhs = self.term()
            v = F.add(v, rhs) if op == "+" else F.sub(v, rhs)
        return v

    def term(self):
        v = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            tok = self.take("op")
            rhs = self.unary()
            if tok[1] == "*":
                v = F.mul(v, rhs)
            else:
                if F.is_zero(rhs):
                    raise LiteralError("division by zero", tok[2])
                v = F.div(v, rhs)
        return v

    def unary(self):
        tok = self.peek()
        if tok[:2] == ("op", "-"):
            self.take("op")
            return F.neg(self.unary())
        if tok[:2] == ("op", "+"):
            self.take("op")
            return self.unary()
        return self.atom()

    def atom(self):
        tok = self.peek()
        if tok[0] == "num":
            self.take("num")
            return Fraction(tok[1])
        if tok[0] == "sqrt":
            self.take("sqrt")
            self.take("op", "(")
            inner = self.expr()
            self.take("op", ")")
            if F.sign(inner) < 0:
                raise LiteralError("square root of a negative quantity", tok[2])
            return F.sqrt(inner)
        if tok[:2] == ("op", "("):
            self.take("op")
            v = self.expr()
            self.take("op", ")")
            return v
        raise LiteralError("expected a number, 'sqrt' or '('", tok[2])


def parse_raw(text: str):
    p = _Parser(text)
    v = p.expr()
    p.take("end")
    return v


def _frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _surd_term(m: int, c: Fraction) -> str:
    if m == 1:
        return _frac(c)
    n, d = c.numerator, c.denominator
    if n == 1:
        s = f"sqrt({m})"
    elif n == -1:
        s = f"-sqrt({m})"
    else:
        s = f"{n}*sqrt({m})"
    return s if d == 1 else f"{s}/{d}"


def _join(parts) -> str:
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def _is_compound(s: str) -> bool:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "+-/" and i > 0:
            return True
    return False


def to_literal(x) -> str:
    t = type(x)
    if t is Fraction:
        return _frac(x)
    if t is F.MQ:
        return _join([_surd_term(m, c) for m, c in x.terms])
    root = f"sqrt({to_literal(F.level_radicand(x.level))})"
    if x.b == F.ONE:
        tail = root
    elif x.b == -F.ONE:
        tail = "-" + root
    else:
        b = to_literal(x.b)
        tail = f"({b})*{root}" if _is_compound(b) else f"{b}*{root}"
    if F.is_struct_zero(x.a):
        return tail
    return _join([to_literal(x.a), tail])
