"""Integral lattices with a nondegenerate symmetric bilinear form.

Conventions used throughout the package:

* A lattice is described by its integer Gram matrix ``G``; the pairing
  of coordinate vectors is ``x^T G y``. The form is taken as ground
  truth and never rescaled.
* All arithmetic is exact, over ``int`` and ``fractions.Fraction``.
  Floating point never enters.
* Coordinates carry a frame. A ``primal`` vector is written in the
  lattice basis, a ``dual`` vector in the dual basis, and the two are
  never identified silently: conversion goes through ``dual_class``
  (multiplication by ``G``) or ``primal_of_dual`` (exact solve against
  ``G``). Mixing frames raises ``FrameError``.
* The signature is computed by exact symmetric congruence reduction of
  the Gram matrix, not by any numerical eigenvalue routine.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Sequence, Union

from . import linalg
from .errors import (
    DegenerateFormError,
    FrameError,
    NonIntegralError,
    NonSymmetricError,
    ShapeError,
    ZeroVectorError,
)

Rational = Union[int, str, Fraction]


class Frame(str, Enum):
    PRIMAL = "primal"
    DUAL = "dual"


def _to_fraction(value: Rational) -> Fraction:
    if isinstance(value, float):
        raise TypeError("floating point coordinates are not accepted")
    return Fraction(value)


@dataclass(frozen=True)
class FramedVector:
    """Rational coordinate vector tagged with the frame it lives in."""

    frame: Frame
    coords: tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.coords)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def ints(self) -> tuple[int, ...]:
        """Integer coordinates, or NonIntegralError."""
        if not self.is_integral():
            raise NonIntegralError(f"vector {self.coords} is not integral")
        return tuple(int(c) for c in self.coords)

    def scaled(self, factor: Rational) -> "FramedVector":
        f = _to_fraction(factor)
        return FramedVector(self.frame, tuple(f * c for c in self.coords))

    def __neg__(self) -> "FramedVector":
        return FramedVector(self.frame, tuple(-c for c in self.coords))

    def __add__(self, other: "FramedVector") -> "FramedVector":
        _same_frame(self, other)
        return FramedVector(self.frame, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "FramedVector") -> "FramedVector":
        _same_frame(self, other)
        return FramedVector(self.frame, tuple(a - b for a, b in zip(self.coords, other.coords)))


def _same_frame(a: FramedVector, b: FramedVector) -> None:
    if a.frame is not b.frame:
        raise FrameError(f"cannot combine {a.frame.value} and {b.frame.value} vectors")
    if len(a) != len(b):
        raise ShapeError(f"length mismatch: {len(a)} vs {len(b)}")


def primal(coords: Sequence[Rational]) -> FramedVector:
    """Vector in the lattice basis."""
    return FramedVector(Frame.PRIMAL, tuple(_to_fraction(c) for c in coords))


def dual(coords: Sequence[Rational]) -> FramedVector:
    """Vector in the dual basis."""
    return FramedVector(Frame.DUAL, tuple(_to_fraction(c) for c in coords))


@dataclass(frozen=True)
class Lattice:
    """Integral lattice: Gram matrix, rank, signature, determinant.

    Construct through ``make_lattice``, which checks symmetry and
    nondegeneracy and computes the signature exactly.
    """

    gram: tuple[tuple[int, ...], ...]
    rank: int
    signature: tuple[int, int]
    det: int


@dataclass(frozen=True)
class DiscriminantGroup:
    """Finite quotient L*/L: invariant factors > 1 and total order."""

    invariant_factors: tuple[int, ...]
    order: int


@dataclass(frozen=True)
class SmithDecomposition:
    """U * M * V diagonal with the invariant-factor divisibility chain."""

    diagonal: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]


def make_lattice(gram: Sequence[Sequence[int]]) -> Lattice:
    """Validated lattice from a symmetric nondegenerate integer matrix."""
    n = len(gram)
    if n == 0:
        raise ShapeError("Gram matrix must be nonempty")
    rows = []
    for row in gram:
        if len(row) != n:
            raise ShapeError("Gram matrix must be square")
        conv = []
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                raise ShapeError("Gram entries must be integers")
            conv.append(x)
        rows.append(tuple(conv))
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise NonSymmetricError(f"entries ({i},{j}) and ({j},{i}) differ")
    det = linalg.bareiss_det(rows)
    if det == 0:
        raise DegenerateFormError("Gram matrix is singular")
    return Lattice(tuple(rows), n, _signature(rows), det)


def _signature(gram: Sequence[Sequence[int]]) -> tuple[int, int]:
    # symmetric congruence reduction; exact, so signs are unambiguous
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    pos = neg = 0
    for t in range(n):
        if a[t][t] == 0:
            for i in range(t + 1, n):
                if a[i][i] != 0:
                    a[t], a[i] = a[i], a[t]
                    for row in a:
                        row[t], row[i] = row[i], row[t]
                    break
            else:
                for j in range(t + 1, n):
                    if a[t][j] != 0:
                        for c in range(n):
                            a[t][c] += a[j][c]
                        for r in range(n):
                            a[r][t] += a[r][j]
                        break
                else:
                    raise DegenerateFormError("form is degenerate")
        p = a[t][t]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(t + 1, n):
            f = a[i][t] / p
            if f == 0:
                continue
            for j in range(n):
                a[i][j] -= f * a[t][j]
            for j in range(n):
                a[j][i] -= f * a[j][t]
    return pos, neg


def _require_frame(v: FramedVector, frame: Frame) -> None:
    if v.frame is not frame:
        raise FrameError(f"expected a {frame.value} vector, got {v.frame.value}")


def _require_rank(lattice: Lattice, v: FramedVector) -> None:
    if len(v) != lattice.rank:
        raise ShapeError(f"vector length {len(v)} does not match rank {lattice.rank}")


def q_eval(lattice: Lattice, x: FramedVector, y: FramedVector) -> Fraction:
    """The form x^T G y. Both arguments must be primal."""
    _require_frame(x, Frame.PRIMAL)
    _require_frame(y, Frame.PRIMAL)
    _require_rank(lattice, x)
    _require_rank(lattice, y)
    g = lattice.gram
    total = Fraction(0)
    for i, xi in enumerate(x.coords):
        if xi == 0:
            continue
        row = g[i]
        total += xi * sum(row[j] * yj for j, yj in enumerate(y.coords))
    return total


def dual_pairing(gamma: FramedVector, x: FramedVector) -> Fraction:
    """Evaluation of a dual vector on a primal one."""
    _require_frame(gamma, Frame.DUAL)
    _require_frame(x, Frame.PRIMAL)
    if len(gamma) != len(x):
        raise ShapeError(f"length mismatch: {len(gamma)} vs {len(x)}")
    return Fraction(sum(a * b for a, b in zip(gamma.coords, x.coords)))


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form with both unimodular transforms.

    Deterministic: the pivot is always the surviving entry of smallest
    absolute value, ties broken by position. The returned diagonal is
    nonnegative and each entry divides the next.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    a = []
    for row in matrix:
        if len(row) != n:
            raise ShapeError("matrix rows have unequal length")
        a.append([int(x) for x in row])
    u = linalg.identity(m)
    v = linalg.identity(n)

    def row_op(i: int, k: int, c: int) -> None:
        a[i] = [x + c * y for x, y in zip(a[i], a[k])]
        u[i] = [x + c * y for x, y in zip(u[i], u[k])]

    def col_op(j: int, k: int, c: int) -> None:
        for row in a:
            row[j] += c * row[k]
        for row in v:
            row[j] += c * row[k]

    def swap_rows(i: int, k: int) -> None:
        if i != k:
            a[i], a[k] = a[k], a[i]
            u[i], u[k] = u[k], u[i]

    def swap_cols(j: int, k: int) -> None:
        if j != k:
            for row in a:
                row[j], row[k] = row[k], row[j]
            for row in v:
                row[j], row[k] = row[k], row[j]

    rmax = min(m, n)
    t = 0
    while t < rmax:
        best = None
        for i in range(t, m):
            for j in range(t, n):
                val = abs(a[i][j])
                if val and (best is None or val < best[0]):
                    best = (val, i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            restart = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    if q:
                        row_op(i, t, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    if q:
                        col_op(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        restart = True
                        break
            if restart:
                continue
            break
        p = a[t][t]
        fix = None
        for i in range(t + 1, m):
            if any(a[i][j] % p for j in range(t + 1, n)):
                fix = i
                break
        if fix is not None:
            row_op(t, fix, 1)
            continue
        t += 1
    for k in range(rmax):
        if a[k][k] < 0:
            a[k] = [-x for x in a[k]]
            u[k] = [-x for x in u[k]]
    diag = tuple(a[k][k] for k in range(rmax))
    return SmithDecomposition(diag, tuple(map(tuple, u)), tuple(map(tuple, v)))


def discriminant_group(lattice: Lattice) -> DiscriminantGroup:
    snf = smith_normal_form(lattice.gram)
    order = 1
    for d in snf.diagonal:
        order *= d
    assert order == abs(lattice.det)
    return DiscriminantGroup(tuple(d for d in snf.diagonal if d > 1), order)


def dual_class(lattice: Lattice, x: FramedVector) -> FramedVector:
    """G x in the dual frame; satisfies q(x, y) = <dual_class(x), y>."""
    _require_frame(x, Frame.PRIMAL)
    _require_rank(lattice, x)
    g = lattice.gram
    coords = tuple(
        Fraction(sum(g[i][j] * x.coords[j] for j in range(lattice.rank)))
        for i in range(lattice.rank)
    )
    return FramedVector(Frame.DUAL, coords)


def primal_of_dual(lattice: Lattice, gamma: FramedVector) -> FramedVector:
    """Exact inverse of dual_class."""
    _require_frame(gamma, Frame.DUAL)
    _require_rank(lattice, gamma)
    coords = linalg.solve_exact(lattice.gram, gamma.coords)
    return FramedVector(Frame.PRIMAL, coords)


def divisibility(lattice: Lattice, x: FramedVector) -> int:
    """gcd of the pairings of x against the lattice basis."""
    _require_frame(x, Frame.PRIMAL)
    _require_rank(lattice, x)
    xi = x.ints()
    if all(c == 0 for c in xi):
        raise ZeroVectorError("divisibility of the zero vector is undefined")
    g = lattice.gram
    vals = [abs(sum(g[i][j] * xi[j] for j in range(lattice.rank))) for i in range(lattice.rank)]
    return gcd(*vals)


def is_primitive(lattice: Lattice, x: FramedVector) -> bool:
    """True when x is not a proper integer multiple of a lattice vector."""
    _require_frame(x, Frame.PRIMAL)
    _require_rank(lattice, x)
    xi = x.ints()
    if all(c == 0 for c in xi):
        raise ZeroVectorError("the zero vector is neither primitive nor imprimitive")
    return gcd(*(abs(c) for c in xi)) == 1
