"""Exact arithmetic in the cyclotomic field Q(zeta_12).

Elements are stored as ``(n0 + n1 z + n2 z^2 + n3 z^3) / d`` with integer
numerators and a positive common denominator, reduced modulo the 12th
cyclotomic polynomial ``z^4 - z^2 + 1``.  The imaginary unit is ``z^3``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Union

__all__ = [
    "Cyc12",
    "CycError",
    "CycSyntaxError",
    "ZeroDenominator",
    "DivisionByZero",
    "cyc",
    "cyc_parse",
    "ZETA",
    "I",
    "ZERO",
    "ONE",
]


class CycError(ValueError):
    pass


class CycSyntaxError(CycError):
    pass


class ZeroDenominator(CycError):
    pass


class DivisionByZero(CycError, ZeroDivisionError):
    pass


Scalar = Union["Cyc12", int, Fraction]


def _reduce_power(m: int) -> tuple[int, int, int, int]:
    """Coordinates of z^m in the basis 1, z, z^2, z^3."""
    m %= 12
    sign = 1
    if m >= 6:  # z^6 = -1
        m -= 6
        sign = -1
    table = {
        0: (1, 0, 0, 0),
        1: (0, 1, 0, 0),
        2: (0, 0, 1, 0),
        3: (0, 0, 0, 1),
        4: (-1, 0, 1, 0),  # z^4 = z^2 - 1
        5: (0, -1, 0, 1),  # z^5 = z^3 - z
    }
    return tuple(sign * c for c in table[m])  # type: ignore[return-value]


# images of the basis under z -> z^k, for the Galois automorphisms
_GALOIS = {k: [_reduce_power(k * j) for j in range(4)] for k in (1, 5, 7, 11)}


class Cyc12:
    """An element of Q(zeta_12); immutable and hashable."""

    __slots__ = ("_n", "_d", "_hash")

    def __init__(self, c0: Scalar = 0, c1: Scalar = 0, c2: Scalar = 0, c3: Scalar = 0):
        fr = [Fraction(c) for c in (c0, c1, c2, c3)]
        d = 1
        for f in fr:
            d = d * f.denominator // gcd(d, f.denominator)
        self._set(tuple(f.numerator * (d // f.denominator) for f in fr), d)

    def _set(self, n: tuple[int, int, int, int], d: int) -> None:
        if d < 0:
            n, d = tuple(-x for x in n), -d
        g = gcd(gcd(gcd(n[0], n[1]), gcd(n[2], n[3])), d)
        if g > 1:
            n, d = tuple(x // g for x in n), d // g
        if not any(n):
            d = 1
        self._n = n
        self._d = d
        self._hash = None

    @classmethod
    def _raw(cls, n: tuple[int, int, int, int], d: int) -> Cyc12:
        obj = cls.__new__(cls)
        obj._set(n, d)
        return obj

    @classmethod
    def coerce(cls, value: Scalar) -> Cyc12:
        if isinstance(value, Cyc12):
            return value
        if isinstance(value, int):
            return cls._raw((value, 0, 0, 0), 1)
        if isinstance(value, Fraction):
            return cls._raw((value.numerator, 0, 0, 0), value.denominator)
        if isinstance(value, str):
            return cyc_parse(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to Cyc12")

    @classmethod
    def zeta_power(cls, m: int) -> Cyc12:
        return cls._raw(_reduce_power(m), 1)

    # -- coordinates -------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return tuple(Fraction(x, self._d) for x in self._n)  # type: ignore[return-value]

    c0 = property(lambda self: Fraction(self._n[0], self._d))
    c1 = property(lambda self: Fraction(self._n[1], self._d))
    c2 = property(lambda self: Fraction(self._n[2], self._d))
    c3 = property(lambda self: Fraction(self._n[3], self._d))

    def is_zero(self) -> bool:
        return not any(self._n)

    def is_rational(self) -> bool:
        return not (self._n[1] or self._n[2] or self._n[3])

    def __bool__(self) -> bool:
        return any(self._n)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: Scalar) -> Cyc12:
        if not isinstance(other, Cyc12):
            try:
                other = Cyc12.coerce(other)
            except TypeError:
                return NotImplemented
        a, d1 = self._n, self._d
        b, d2 = other._n, other._d
        if d1 == d2:
            return Cyc12._raw((a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]), d1)
        return Cyc12._raw(
            (a[0] * d2 + b[0] * d1, a[1] * d2 + b[1] * d1, a[2] * d2 + b[2] * d1, a[3] * d2 + b[3] * d1),
            d1 * d2,
        )

    __radd__ = __add__

    def __neg__(self) -> Cyc12:
        n = self._n
        return Cyc12._raw((-n[0], -n[1], -n[2], -n[3]), self._d)

    def __pos__(self) -> Cyc12:
        return self

    def __sub__(self, other: Scalar) -> Cyc12:
        if not isinstance(other, Cyc12):
            try:
                other = Cyc12.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> Cyc12:
        return Cyc12.coerce(other) - self

    def __mul__(self, other: Scalar) -> Cyc12:
        if not isinstance(other, Cyc12):
            try:
                other = Cyc12.coerce(other)
            except TypeError:
                return NotImplemented
        a0, a1, a2, a3 = self._n
        b0, b1, b2, b3 = other._n
        d = self._d * other._d
        if not (b1 or b2 or b3):
            return Cyc12._raw((a0 * b0, a1 * b0, a2 * b0, a3 * b0), d)
        if not (a1 or a2 or a3):
            return Cyc12._raw((a0 * b0, a0 * b1, a0 * b2, a0 * b3), d)
        p0 = a0 * b0
        p1 = a0 * b1 + a1 * b0
        p2 = a0 * b2 + a1 * b1 + a2 * b0
        p3 = a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0
        p4 = a1 * b3 + a2 * b2 + a3 * b1
        p5 = a2 * b3 + a3 * b2
        p6 = a3 * b3
        # z^4 = z^2 - 1, z^5 = z^3 - z, z^6 = -1
        return Cyc12._raw((p0 - p4 - p6, p1 - p5, p2 + p4, p3 + p5), d)

    __rmul__ = __mul__

    def galois(self, k: int) -> Cyc12:
        """Image under the automorphism z -> z^k (k coprime to 12)."""
        images = _GALOIS[k % 12]
        out = [0, 0, 0, 0]
        for c, img in zip(self._n, images):
            if c:
                for t in range(4):
                    out[t] += c * img[t]
        return Cyc12._raw(tuple(out), self._d)  # type: ignore[arg-type]

    def conj(self) -> Cyc12:
        return self.galois(11)

    def norm_sq(self) -> Cyc12:
        return self * self.conj()

    def field_norm(self) -> Fraction:
        """Product of all four Galois conjugates (a rational number)."""
        prod = self * self.galois(5) * self.galois(7) * self.galois(11)
        assert prod.is_rational()
        return prod.c0

    def inverse(self) -> Cyc12:
        if self.is_zero():
            raise DivisionByZero("division by zero in Q(zeta_12)")
        if self.is_rational():
            return Cyc12._raw((self._d, 0, 0, 0), self._n[0])
        others = self.galois(5) * self.galois(7) * self.galois(11)
        norm = (self * others).c0
        return others * Cyc12.coerce(1 / norm)

    def __truediv__(self, other: Scalar) -> Cyc12:
        if not isinstance(other, Cyc12):
            try:
                other = Cyc12.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Scalar) -> Cyc12:
        return Cyc12.coerce(other) * self.inverse()

    def __pow__(self, e: int) -> Cyc12:
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- predicates --------------------------------------------------------

    def is_real(self) -> bool:
        return self == self.conj()

    def sign(self) -> int:
        """Sign of a real element; these are exactly x + y*sqrt(3) with rational x, y."""
        if not self.is_real():
            raise CycError(f"{self} is not real")
        n0, n1, n2, _ = self._n
        # 2 d * value = (2 n0 + n2) + n1 sqrt(3)
        p, q = 2 * n0 + n2, n1
        sp = (p > 0) - (p < 0)
        sq = (q > 0) - (q < 0)
        if sp == sq or not sq:
            return sp
        if not sp:
            return sq
        return sp if p * p > 3 * q * q else sq

    def is_root_of_unity_12(self) -> bool:
        return self**12 == ONE

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Cyc12):
            return self._n == other._n and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self == Cyc12.coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, self._d))
        return self._hash

    # -- printing ----------------------------------------------------------

    def __str__(self) -> str:
        parts: list[str] = []
        for power, c in enumerate(self.coeffs):
            if c == 0:
                continue
            base = ("", "z", "z^2", "i")[power]
            mag = abs(c)
            if not base:
                body = _fmt_rational(mag)
            elif mag == 1:
                body = base
            else:
                body = f"{_fmt_rational(mag)}*{base}"
            if not parts:
                if c < 0:
                    # grammar only allows a sign on a rational literal
                    body = "-" + body if not base or mag != 1 else f"-1*{base}"
                parts.append(body)
            else:
                parts.append(("-" if c < 0 else "+") + body)
        return "".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"Cyc12('{self}')"


def _fmt_rational(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


ZERO = Cyc12._raw((0, 0, 0, 0), 1)
ONE = Cyc12._raw((1, 0, 0, 0), 1)
ZETA = Cyc12._raw((0, 1, 0, 0), 1)
I = Cyc12._raw((0, 0, 0, 1), 1)


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        tok = m.group(1) or m.group(2)
        if tok is None:
            break
        if not tok.isdigit() and tok not in "+-*/^()iz":
            raise CycSyntaxError(f"unexpected character {tok!r} in {text!r}")
        tokens.append(tok)
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise CycSyntaxError(f"expected {expected or 'token'} at position {self.pos} in {self.text!r}")
        self.pos += 1
        return tok

    def parse(self) -> Cyc12:
        if not self.tokens:
            raise CycSyntaxError("empty scalar literal")
        value = self.expr()
        if self.peek() is not None:
            raise CycSyntaxError(f"trailing input {self.peek()!r} in {self.text!r}")
        return value

    def expr(self) -> Cyc12:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Cyc12:
        value = self.factor()
        while self.peek() == "*":
            self.take()
            value = value * self.factor()
        return value

    def uint(self) -> int:
        tok = self.take()
        if not tok.isdigit():
            raise CycSyntaxError(f"expected integer, got {tok!r} in {self.text!r}")
        return int(tok)

    def factor(self) -> Cyc12:
        tok = self.peek()
        if tok is None:
            raise CycSyntaxError(f"unexpected end of {self.text!r}")
        if tok == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        if tok == "i":
            self.take()
            return I
        if tok == "z":
            self.take()
            if self.peek() == "^":
                self.take()
                return Cyc12.zeta_power(self.uint())
            return ZETA
        negative = False
        if tok == "-":
            self.take()
            negative = True
            if not (self.peek() or "").isdigit():
                # lenient: unary minus on a non-literal factor
                return -self.factor()
        num = self.uint()
        den = 1
        if self.peek() == "/":
            self.take()
            den = self.uint()
            if den == 0:
                raise ZeroDenominator(f"zero denominator in {self.text!r}")
        value = Fraction(-num if negative else num, den)
        return Cyc12.coerce(value)


def cyc_parse(text: str) -> Cyc12:
    """Parse a scalar literal such as ``"2/3-5*i"`` or ``"z^4"``."""
    return _Parser(text).parse()


def cyc(value: Scalar | str) -> Cyc12:
    """Coerce ints, fractions, literals and Cyc12 values to Cyc12."""
    if isinstance(value, str):
        return cyc_parse(value)
    return Cyc12.coerce(value)
