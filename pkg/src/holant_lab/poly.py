"""Sparse multivariate polynomials over Q(zeta_12) and small symbolic matrices.

The variable alphabet is fixed to ``a, b, X, Y, x``.  ``a, b`` are the
signature parameters, ``X = ab`` and ``Y = a^3 + b^3`` the symmetrized
coordinates, and ``x`` is the characteristic-polynomial variable.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

from .cyclo import ONE, ZERO, Cyc12, cyc

__all__ = [
    "VARS",
    "MPoly",
    "PolyMatrix",
    "PolyError",
    "UnboundVariable",
    "NonSquare",
    "ZeroDivisor",
    "NotDivisible",
    "NotInvariant",
    "poly",
    "var",
    "poly_det",
    "poly_charpoly",
    "poly_divides",
    "q_sequence",
    "ab_to_xy",
    "xy_to_ab",
    "cross",
]

VARS = ("a", "b", "X", "Y", "x")
_INDEX = {v: k for k, v in enumerate(VARS)}
_ZERO_EXP = (0, 0, 0, 0, 0)

Exp = tuple[int, int, int, int, int]
Coeff = Union[Cyc12, int, Fraction]


class PolyError(ValueError):
    pass


class UnboundVariable(PolyError):
    pass


class NonSquare(PolyError):
    pass


class ZeroDivisor(PolyError, ZeroDivisionError):
    pass


class NotDivisible(PolyError):
    pass


class NotInvariant(PolyError):
    """Raised when an (a, b)-polynomial is not a polynomial in ab and a^3+b^3."""


def _grlex_key(e: Exp) -> tuple:
    return (sum(e), e)


class MPoly:
    """Immutable sparse polynomial; ``terms`` maps exponent vectors to nonzero coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Exp, Coeff] | None = None):
        clean: dict[Exp, Cyc12] = {}
        if terms:
            for e, c in terms.items():
                c = Cyc12.coerce(c)
                if c:
                    clean[tuple(e)] = c  # type: ignore[index]
        self.terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict[Exp, Cyc12]) -> MPoly:
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Coeff) -> MPoly:
        c = Cyc12.coerce(c)
        return cls._wrap({_ZERO_EXP: c} if c else {})

    @classmethod
    def coerce(cls, value: MPoly | Coeff | str) -> MPoly:
        if isinstance(value, MPoly):
            return value
        if isinstance(value, str):
            return poly(value)
        return cls.const(value)

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            for k, p in enumerate(e):
                if p:
                    used.add(VARS[k])
        return used

    def degree(self, v: str | None = None) -> int:
        if not self.terms:
            return -1
        if v is None:
            return max(sum(e) for e in self.terms)
        k = _INDEX[v]
        return max(e[k] for e in self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ZERO_EXP in self.terms)

    def constant_value(self) -> Cyc12:
        if not self.is_constant():
            raise UnboundVariable(f"polynomial {self} is not constant")
        return self.terms.get(_ZERO_EXP, ZERO)

    def leading_term(self) -> tuple[Exp, Cyc12]:
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def coefficient_in(self, v: str, power: int) -> MPoly:
        """Coefficient of ``v**power`` as a polynomial in the remaining variables."""
        k = _INDEX[v]
        out = {}
        for e, c in self.terms.items():
            if e[k] == power:
                e2 = list(e)
                e2[k] = 0
                out[tuple(e2)] = c
        return MPoly._wrap(out)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: MPoly | Coeff) -> MPoly:
        other = MPoly.coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> MPoly:
        return MPoly._wrap({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: MPoly | Coeff) -> MPoly:
        return self + (-MPoly.coerce(other))

    def __rsub__(self, other: MPoly | Coeff) -> MPoly:
        return MPoly.coerce(other) - self

    def __mul__(self, other: MPoly | Coeff) -> MPoly:
        if not isinstance(other, MPoly):
            c = Cyc12.coerce(other)
            if not c:
                return MPoly._wrap({})
            return MPoly._wrap({e: v * c for e, v in self.terms.items()})
        out: dict[Exp, Cyc12] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3], e1[4] + e2[4])
                prod = c1 * c2
                s = out.get(e)
                out[e] = prod if s is None else s + prod
        return MPoly._wrap({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MPoly:
        if n < 0:
            raise ValueError("negative polynomial power")
        result = MPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, Cyc12)):
            other = MPoly.const(other)
        if isinstance(other, str):
            other = poly(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def conj(self) -> MPoly:
        """Conjugate the coefficients (variables are left alone)."""
        return MPoly._wrap({e: c.conj() for e, c in self.terms.items()})

    # -- substitution ------------------------------------------------------

    def subst(self, bindings: Mapping[str, MPoly | Coeff | str], scalar: bool = False) -> MPoly | Cyc12:
        """Substitute variables simultaneously; with ``scalar=True`` every variable must be bound."""
        bound = {_INDEX[v]: MPoly.coerce(p) for v, p in bindings.items()}
        if scalar:
            missing = self.variables() - {VARS[k] for k in bound}
            if missing:
                raise UnboundVariable(f"unbound variable(s) {sorted(missing)} in {self}")
        powers: dict[tuple[int, int], MPoly] = {}

        def power(k: int, p: int) -> MPoly:
            key = (k, p)
            if key not in powers:
                powers[key] = bound[k] if p == 1 else power(k, p - 1) * bound[k]
            return powers[key]

        result = MPoly._wrap({})
        for e, c in self.terms.items():
            rest = list(e)
            term = None
            for k in bound:
                if e[k]:
                    rest[k] = 0
                    factor = power(k, e[k])
                    term = factor if term is None else term * factor
            mono = MPoly._wrap({tuple(rest): c})  # type: ignore[dict-item]
            result = result + (mono if term is None else term * mono)
        if scalar:
            return result.constant_value()
        return result

    def evaluate(self, **values: Coeff | str) -> Cyc12:
        """Evaluate at scalar values, e.g. ``p.evaluate(X=2, Y="i")``."""
        vals = {_INDEX[v]: cyc(c) for v, c in values.items()}
        missing = self.variables() - {VARS[k] for k in vals}
        if missing:
            raise UnboundVariable(f"unbound variable(s) {sorted(missing)} in {self}")
        cache: dict[tuple[int, int], Cyc12] = {}
        total = ZERO
        for e, c in self.terms.items():
            term = c
            for k, p in enumerate(e):
                if p:
                    key = (k, p)
                    if key not in cache:
                        cache[key] = vals[k] ** p
                    term = term * cache[key]
            total = total + term
        return total

    # -- printing ----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exp, Cyc12]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                VARS[k] if p == 1 else f"{VARS[k]}^{p}" for k, p in enumerate(e) if p
            )
            if c.is_rational():
                r = c.c0
                sign = "-" if r < 0 else "+"
                mag = abs(r)
                if mono and mag == 1:
                    body = mono
                else:
                    body = str(mag) + ("*" + mono if mono else "")
            else:
                sign = "+"
                body = f"({c})" + ("*" + mono if mono else "")
            out.append((sign, body))
        first_sign, first = out[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"MPoly('{self}')"


def var(name: str) -> MPoly:
    e = [0] * 5
    e[_INDEX[name]] = 1
    return MPoly._wrap({tuple(e): ONE})  # type: ignore[dict-item]


# -- formula parser ------------------------------------------------------------
# Accepts juxtaposition as multiplication, so "2 a^4 b + a (b - 1)^2" works.

_PTOKEN = re.compile(r"\s*(?:(\d+)|([abXYxiz])|([-+*/^()]))")


@lru_cache(maxsize=512)
def poly(text: str) -> MPoly:
    """Parse a polynomial formula over the fixed alphabet."""
    tokens = []
    pos = 0
    text_s = text.strip()
    while pos < len(text_s):
        m = _PTOKEN.match(text_s, pos)
        if m is None:
            raise PolyError(f"cannot parse polynomial {text!r} at {pos}")
        tokens.append(m.group(m.lastindex))
        pos = m.end()
    idx = 0

    def peek():
        return tokens[idx] if idx < len(tokens) else None

    def take():
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    def expr() -> MPoly:
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
        value = term() * sign
        while peek() in ("+", "-"):
            op = take()
            rhs = term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term() -> MPoly:
        value = power()
        while True:
            tok = peek()
            if tok == "*":
                take()
                value = value * power()
            elif tok == "/":
                take()
                den = power()
                if not den.is_constant() or not den.constant_value():
                    raise PolyError(f"division by non-constant in {text!r}")
                value = value * den.constant_value().inverse()
            elif tok is not None and (tok == "(" or tok.isdigit() or tok in "abXYxiz"):
                value = value * power()
            else:
                return value

    def power() -> MPoly:
        base = atom()
        if peek() == "^":
            take()
            tok = take()
            if not tok.isdigit():
                raise PolyError(f"bad exponent {tok!r} in {text!r}")
            base = base ** int(tok)
        return base

    def atom() -> MPoly:
        tok = take()
        if tok == "(":
            value = expr()
            if take() != ")":
                raise PolyError(f"unbalanced parentheses in {text!r}")
            return value
        if tok == "-":
            return -power()
        if tok.isdigit():
            return MPoly.const(int(tok))
        if tok == "i":
            return MPoly.const(cyc("i"))
        if tok == "z":
            return MPoly.const(cyc("z"))
        if tok in _INDEX:
            return var(tok)
        raise PolyError(f"unexpected token {tok!r} in {text!r}")

    if not tokens:
        raise PolyError("empty polynomial")
    result = expr()
    if idx != len(tokens):
        raise PolyError(f"trailing input in {text!r}")
    return result


# -- matrices ------------------------------------------------------------------


class PolyMatrix:
    """Rectangular matrix of MPoly entries."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[MPoly | Coeff | str]]):
        self.rows = tuple(tuple(MPoly.coerce(v) for v in row) for row in rows)
        if not self.rows or not self.rows[0]:
            raise PolyError("matrix dimensions must be at least 1")
        if any(len(r) != len(self.rows[0]) for r in self.rows):
            raise PolyError("ragged matrix")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @classmethod
    def identity(cls, n: int) -> PolyMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, entries: Sequence[MPoly | Coeff | str]) -> PolyMatrix:
        return cls([[e] for e in entries])

    def __getitem__(self, ij: tuple[int, int]) -> MPoly:
        i, j = ij
        return self.rows[i][j]

    def col(self, j: int) -> list[MPoly]:
        return [r[j] for r in self.rows]

    def transpose(self) -> PolyMatrix:
        return PolyMatrix(zip(*self.rows))

    def __add__(self, other: PolyMatrix) -> PolyMatrix:
        if self.shape != other.shape:
            raise PolyError("shape mismatch")
        return PolyMatrix([[p + q for p, q in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other: PolyMatrix) -> PolyMatrix:
        return self + other.scale(-1)

    def scale(self, c: MPoly | Coeff) -> PolyMatrix:
        c = MPoly.coerce(c)
        return PolyMatrix([[p * c for p in r] for r in self.rows])

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        n, m = self.shape
        m2, k = other.shape
        if m != m2:
            raise PolyError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.col(j) for j in range(k)]
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = MPoly.const(0)
                for p, q in zip(r, c):
                    if p and q:
                        acc = acc + p * q
                row.append(acc)
            out.append(row)
        return PolyMatrix(out)

    def __pow__(self, n: int) -> PolyMatrix:
        rows, cols = self.shape
        if rows != cols:
            raise NonSquare(f"matrix power of non-square {self.shape}")
        result = PolyMatrix.identity(rows)
        for _ in range(n):
            result = result @ self
        return result

    def map(self, fn) -> PolyMatrix:
        return PolyMatrix([[fn(p) for p in r] for r in self.rows])

    def subst(self, bindings: Mapping[str, MPoly | Coeff | str]) -> PolyMatrix:
        return self.map(lambda p: p.subst(bindings))

    def evaluate(self, **values) -> list[list[Cyc12]]:
        return [[p.evaluate(**values) for p in r] for r in self.rows]

    def trace(self) -> MPoly:
        n, m = self.shape
        if n != m:
            raise NonSquare(f"trace of non-square {self.shape}")
        acc = MPoly.const(0)
        for i in range(n):
            acc = acc + self.rows[i][i]
        return acc

    def hstack(self, other: PolyMatrix) -> PolyMatrix:
        if self.shape[0] != other.shape[0]:
            raise PolyError("row count mismatch")
        return PolyMatrix([r1 + r2 for r1, r2 in zip(self.rows, other.rows)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(p) for p in r) + "]" for r in self.rows) + "]"

    def __repr__(self) -> str:
        return f"PolyMatrix({self})"


def poly_det(m: PolyMatrix) -> MPoly:
    """Determinant by cofactor expansion along the first row (memoized minors)."""
    n, k = m.shape
    if n != k:
        raise NonSquare(f"determinant of non-square {m.shape} matrix")
    rows = m.rows
    memo: dict[tuple[int, frozenset], MPoly] = {}

    def minor(r: int, cols: tuple[int, ...]) -> MPoly:
        if r == n:
            return MPoly.const(1)
        key = (r, frozenset(cols))
        if key in memo:
            return memo[key]
        acc = MPoly.const(0)
        for pos, c in enumerate(cols):
            entry = rows[r][c]
            if not entry:
                continue
            sub = minor(r + 1, cols[:pos] + cols[pos + 1 :])
            if not sub:
                continue
            term = entry * sub
            acc = acc + term if pos % 2 == 0 else acc - term
        memo[key] = acc
        return acc

    return minor(0, tuple(range(n)))


def poly_charpoly(m: PolyMatrix) -> list[MPoly]:
    """Coefficients ``[c_{n-1}, ..., c_0]`` of the monic ``det(x I - m)``.

    For a 3x3 matrix this is ``(B, C, D)`` of ``x^3 + B x^2 + C x + D``;
    for 2x2 it is ``(-trace, det)``.
    """
    n, k = m.shape
    if n != k:
        raise NonSquare(f"characteristic polynomial of non-square {m.shape} matrix")
    if "x" in set().union(*(p.variables() for r in m.rows for p in r)):
        raise PolyError("matrix entries must not use the variable x")
    xi = PolyMatrix.identity(n).scale(var("x"))
    char = poly_det(xi - m)
    lead = char.coefficient_in("x", n)
    assert lead == MPoly.const(1)
    return [char.coefficient_in("x", n - 1 - t) for t in range(n)]


def poly_divides(d: MPoly, p: MPoly) -> MPoly:
    """Exact quotient ``p / d``; raises NotDivisible on a nonzero remainder."""
    if not d:
        raise ZeroDivisor("division by the zero polynomial")
    lead_e, lead_c = d.leading_term()
    lead_inv = lead_c.inverse()
    quotient: dict[Exp, Cyc12] = {}
    remainder = dict(p.terms)
    while remainder:
        e = max(remainder, key=_grlex_key)
        c = remainder[e]
        if any(x < y for x, y in zip(e, lead_e)):
            raise NotDivisible(f"{d} does not divide {p}")
        shift = tuple(x - y for x, y in zip(e, lead_e))
        qc = c * lead_inv
        quotient[shift] = quotient.get(shift, ZERO) + qc  # type: ignore[index]
        for de, dc in d.terms.items():
            te = tuple(x + y for x, y in zip(de, shift))
            v = remainder.get(te, ZERO) - qc * dc  # type: ignore[arg-type]
            if v:
                remainder[te] = v  # type: ignore[index]
            else:
                remainder.pop(te, None)  # type: ignore[arg-type]
    return MPoly(quotient)


def cross(u: Sequence[MPoly], v: Sequence[MPoly]) -> list[MPoly]:
    """Cross product of two 3-vectors of polynomials."""
    return [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]


# -- symmetrized coordinates ----------------------------------------------------


@lru_cache(maxsize=None)
def q_sequence(k: int) -> MPoly:
    """``a^{3k} + b^{3k}`` written in X = ab, Y = a^3 + b^3."""
    if k == 0:
        return MPoly.const(2)
    if k == 1:
        return var("Y")
    return var("Y") * q_sequence(k - 1) - var("X") ** 3 * q_sequence(k - 2)


def xy_to_ab(p: MPoly) -> MPoly:
    return p.subst({"X": poly("a b"), "Y": poly("a^3 + b^3")})


def ab_to_xy(p: MPoly) -> MPoly:
    """Rewrite an (a, b)-polynomial as a polynomial in X = ab and Y = a^3+b^3.

    Monomials pair up as ``a^i b^j + a^j b^i = X^min(i,j) * q_{|i-j|/3}``;
    NotInvariant is raised when the pairing or the mod-3 condition fails.
    """
    extra = p.variables() - {"a", "b"}
    if extra:
        raise NotInvariant(f"unexpected variables {sorted(extra)}")
    out = MPoly.const(0)
    X = var("X")
    seen = set()
    for e, c in p.terms.items():
        i, j = e[0], e[1]
        if (i, j) in seen:
            continue
        seen.add((i, j))
        if i == j:
            out = out + X**i * c
            continue
        mirror = (j, i, 0, 0, 0)
        if p.terms.get(mirror) != c:
            raise NotInvariant(f"coefficient of a^{i} b^{j} differs from its mirror")
        if (i - j) % 3:
            raise NotInvariant(f"a^{i} b^{j}: exponent difference not divisible by 3")
        seen.add((j, i))
        out = out + X ** min(i, j) * q_sequence(abs(i - j) // 3) * c
    return out
