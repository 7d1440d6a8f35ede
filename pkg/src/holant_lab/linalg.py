"""Dense exact linear algebra on lists of Cyc12 values."""

from __future__ import annotations

from typing import Sequence

from .cyclo import ONE, ZERO, Cyc12, cyc

Matrix = list[list[Cyc12]]
Vector = list[Cyc12]


class SingularMatrix(ArithmeticError):
    pass


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[cyc(v) for v in row] for row in rows]


def as_vector(entries: Sequence) -> Vector:
    return [cyc(v) for v in entries]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise ValueError(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    cols = list(zip(*b))
    return [[_dot(row, col) for col in cols] for row in a]


def matvec(a: Matrix, v: Vector) -> Vector:
    if len(a[0]) != len(v):
        raise ValueError("dimension mismatch")
    return [_dot(row, v) for row in a]


def _dot(u: Sequence[Cyc12], v: Sequence[Cyc12]) -> Cyc12:
    acc = ZERO
    for p, q in zip(u, v):
        if p and q:
            acc = acc + p * q
    return acc


def matpow(a: Matrix, k: int) -> Matrix:
    result = identity(len(a))
    for _ in range(k):
        result = matmul(result, a)
    return result


def det(a: Matrix) -> Cyc12:
    """Determinant by Gaussian elimination over the field."""
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    m = [list(r) for r in a]
    result = ONE
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return ZERO
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            result = -result
        p = m[col][col]
        result = result * p
        inv = p.inverse()
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return result


def solve(a: Matrix, b: Vector) -> Vector:
    """Solve ``a x = b`` for square nonsingular ``a``."""
    n = len(a)
    m = [list(r) + [v] for r, v in zip(a, b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            raise SingularMatrix("singular system")
        m[col], m[pivot] = m[pivot], m[col]
        inv = m[col][col].inverse()
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def trace(a: Matrix) -> Cyc12:
    acc = ZERO
    for i in range(len(a)):
        acc = acc + a[i][i]
    return acc


def det2(u: Sequence[Cyc12], v: Sequence[Cyc12]) -> Cyc12:
    """``det [u v]`` for two 2-vectors; zero iff they are linearly dependent."""
    return u[0] * v[1] - u[1] * v[0]


def fmt_matrix(a: Matrix) -> str:
    return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in a) + "]"
