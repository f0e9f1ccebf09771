"""Exact integer and rational linear algebra helpers.

Matrices are sequences of rows, vectors are flat sequences. Integer
routines use Bareiss fraction-free elimination, so intermediate values
stay integral and nothing is ever rounded.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import SingularSystemError


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)] if m else []


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    cols = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def bareiss_det(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix, computed fraction-free."""
    n = len(m)
    if n == 0:
        return 1
    a = [[int(x) for x in row] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def leading_principal_minors(m: Sequence[Sequence[int]]) -> list[int]:
    return [bareiss_det([row[:k] for row in m[:k]]) for k in range(1, len(m) + 1)]


def is_negative_definite(m: Sequence[Sequence[int]]) -> bool:
    """Sylvester test: the k-th leading minor must carry sign (-1)^k."""
    for k, minor in enumerate(leading_principal_minors(m), start=1):
        if minor == 0:
            return False
        if (minor > 0) != (k % 2 == 0):
            return False
    return True


def _integer_rows(a: Sequence[Sequence], b: Sequence) -> list[list[int]]:
    # scale each augmented row by the lcm of its denominators
    out = []
    for row, rhs in zip(a, b):
        fr = [Fraction(x) for x in row] + [Fraction(rhs)]
        den = 1
        for x in fr:
            den = den * x.denominator // gcd(den, x.denominator)
        out.append([int(x * den) for x in fr])
    return out


def solve_exact(a: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...]:
    """Solve a square nonsingular system over the rationals, exactly.

    Rows are cleared to integers first, the forward pass is Bareiss
    elimination, and back substitution reintroduces fractions only at
    the very end. Raises SingularSystemError when no unique solution
    exists.
    """
    n = len(a)
    if n == 0:
        return ()
    aug = _integer_rows(a, b)
    prev = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if piv is None:
            raise SingularSystemError("matrix is singular")
        if piv != k:
            aug[k], aug[piv] = aug[piv], aug[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                aug[i][j] = (aug[i][j] * aug[k][k] - aug[i][k] * aug[k][j]) // prev
            aug[i][k] = 0
        prev = aug[k][k]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(aug[i][n])
        for j in range(i + 1, n):
            s -= aug[i][j] * x[j]
        x[i] = s / aug[i][i]
    return tuple(x)


def solve_general(a: Sequence[Sequence], b: Sequence) -> tuple[tuple[Fraction, ...] | None, int]:
    """Gauss-Jordan solve of a rectangular rational system.

    Returns (particular solution with free variables set to zero, number
    of free variables), or (None, 0) when the system is inconsistent.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    rows = [[Fraction(x) for x in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        scale = rows[r][c]
        rows[r] = [x / scale for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if rows[i][n] != 0:
            return None, 0
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][n]
    return tuple(x), n - len(pivots)


def ldl(p: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """P = L D L^T for a symmetric positive definite rational matrix.

    L is unit lower triangular, D a list of positive diagonal entries.
    Raises ArithmeticError when a pivot fails to be positive.
    """
    k = len(p)
    lower = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    diag: list[Fraction] = []
    for j in range(k):
        dj = Fraction(p[j][j]) - sum((lower[j][t] ** 2) * diag[t] for t in range(j))
        if dj <= 0:
            raise ArithmeticError("matrix is not positive definite")
        diag.append(dj)
        for i in range(j + 1, k):
            val = Fraction(p[i][j]) - sum(lower[i][t] * lower[j][t] * diag[t] for t in range(j))
            lower[i][j] = val / dj
    return lower, diag
