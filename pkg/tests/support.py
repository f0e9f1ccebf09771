"""Shared builders and independent oracles for the test suite.

The oracles here take the dumb-but-obviously-correct route (exhaustive
boxes, subset enumeration, log sums) and are deliberately independent
of the library's algorithms, so agreement is evidence rather than
tautology.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import product

from hklat import (
    ConeContext,
    make_cone_context,
    make_lattice,
    primal,
    q_eval,
)
from hklat.linalg import bareiss_det, is_negative_definite, mat_mul, solve_exact, transpose

U_GRAM = [[0, 1], [1, 0]]

# Cartan matrix of E8, Bourbaki numbering: nodes 1-3-4-5-6-7-8 in a
# chain with node 2 attached to node 4
E8_GRAM = [
    [2, 0, -1, 0, 0, 0, 0, 0],
    [0, 2, 0, -1, 0, 0, 0, 0],
    [-1, 0, 2, -1, 0, 0, 0, 0],
    [0, -1, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, 0, 0, -1, 2],
]


def direct_sum(*blocks):
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return out


def negate(gram):
    return [[-x for x in row] for row in gram]


def k3_type_gram(k: int):
    """<-2k> + U^3 + E8(-1)^2, rank 23."""
    e8_neg = negate(E8_GRAM)
    return direct_sum([[-2 * k]], U_GRAM, U_GRAM, U_GRAM, e8_neg, e8_neg)


def random_unimodular(rng: random.Random, n: int, steps: int = 6):
    """Product of random elementary shear and swap matrices."""
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if n < 2:
        return m
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        if rng.random() < 0.3:
            for row in m:
                row[i], row[j] = row[j], row[i]
        else:
            c = rng.choice((-2, -1, 1, 2))
            for row in m:
                row[j] += c * row[i]
    return m


def conjugate(gram, t):
    """t^T gram t, the same form written in sheared coordinates."""
    return mat_mul(mat_mul(transpose(t), [list(r) for r in gram]), t)


def invert_unimodular(t):
    n = len(t)
    cols = []
    for j in range(n):
        e = [Fraction(1) if i == j else Fraction(0) for i in range(n)]
        cols.append([int(c) for c in solve_exact(t, e)])
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def apply_matrix(m, v):
    return [sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(v))]


def random_zariski_context(rng: random.Random, steps: int = 6) -> ConeContext:
    """Hyperbolic context whose primes sit inside a diagonally dominant
    negative-definite block with nonnegative pairwise pairings, written
    in a random sheared basis.

    Dominance makes every support subset Gram negative definite, so
    decompositions exist for every input and the subset oracle always
    finds its unique witness. ``steps`` controls how hard the basis is
    sheared; keep it low when coordinates must stay box-searchable.
    """
    rank = rng.randint(2, 4)
    nneg = rank - 1
    nprimes = rng.randint(1, nneg)
    c = [[0] * nneg for _ in range(nneg)]
    for i in range(nneg):
        for j in range(i + 1, nneg):
            c[i][j] = c[j][i] = rng.randint(0, 2)
    neg = [
        [(-(sum(c[i]) + rng.randint(1, 4)) if i == j else c[i][j]) for j in range(nneg)]
        for i in range(nneg)
    ]
    gram = direct_sum([[rng.randint(1, 4)]], neg)
    h = [1] + [0] * nneg
    primes = []
    for i in range(nprimes):
        e = [0] * rank
        e[1 + i] = 1
        primes.append(e)
    t = random_unimodular(rng, rank, steps)
    t_inv = invert_unimodular(t)
    lat = make_lattice(conjugate(gram, t))
    hv = primal(apply_matrix(t_inv, h))
    pvs = [primal(apply_matrix(t_inv, e)) for e in primes]
    return make_cone_context(lat, hv, pvs)


def brute_force_zariski(ctx: ConeContext, d_vec):
    """Try every support subset; a subset is valid when its Gram is
    negative definite, the solved coefficients are strictly positive,
    and the leftover part pairs nonnegatively with every prime.
    Asserts exactly one valid subset and returns it."""
    nprimes = len(ctx.primes)
    valid = []
    for mask in range(1 << nprimes):
        support = [i for i in range(nprimes) if mask >> i & 1]
        gram = [
            [q_eval(ctx.lattice, ctx.primes[i], ctx.primes[j]) for j in support]
            for i in support
        ]
        if support and not is_negative_definite(gram):
            continue
        if support:
            rhs = [q_eval(ctx.lattice, d_vec, ctx.primes[j]) for j in support]
            try:
                coeffs = list(solve_exact(gram, rhs))
            except Exception:
                continue
            if any(a <= 0 for a in coeffs):
                continue
        else:
            coeffs = []
        n_vec = primal([0] * ctx.lattice.rank)
        for idx, a in zip(support, coeffs):
            n_vec = n_vec + ctx.primes[idx].scaled(a)
        p_vec = d_vec - n_vec
        if all(q_eval(ctx.lattice, p_vec, e) >= 0 for e in ctx.primes):
            valid.append((tuple(support), tuple(coeffs), p_vec, n_vec))
    assert len(valid) == 1, f"expected a unique valid support, got {len(valid)}"
    return valid[0]


def box_negative_classes(ctx: ConeContext, square: int, pairing_max: int, box: int):
    """All solutions with sup-norm at most box, by exhaustion.

    Native integer arithmetic throughout; the boxes get large enough
    that Fraction overhead would dominate the whole suite."""
    rank = ctx.lattice.rank
    gram = [[int(x) for x in row] for row in ctx.lattice.gram]
    gh = [sum(gram[i][j] * int(ctx.h.coords[j]) for j in range(rank))
          for i in range(rank)]
    found = []
    for coords in product(range(-box, box + 1), repeat=rank):
        q = sum(
            coords[i] * sum(gram[i][j] * coords[j] for j in range(rank))
            for i in range(rank) if coords[i]
        )
        if q != square:
            continue
        p = sum(gh[i] * coords[i] for i in range(rank))
        if 0 < p <= pairing_max:
            found.append(coords)
    return sorted(found)


def log10_factorial_oracle(m: int) -> float:
    """Float log sum; error around 1e-12 relative, well under the 1e-9
    tolerance it certifies."""
    return math.fsum(math.log10(i) for i in range(2, m + 1))


def random_nondegenerate_gram(rng: random.Random, rank: int, need_negative: bool = False):
    """Random symmetric integer matrix with nonzero determinant; with
    need_negative, one diagonal entry is forced negative so vectors of
    negative square are easy to find."""
    while True:
        m = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            for j in range(i, rank):
                v = rng.randint(-4, 4)
                m[i][j] = m[j][i] = v
        if need_negative:
            i = rng.randrange(rank)
            m[i][i] = -abs(m[i][i]) - rng.randint(1, 3)
        if bareiss_det(m) != 0:
            return m


def find_negative_vector(rng: random.Random, lat, tries: int = 200):
    for _ in range(tries):
        v = primal([rng.randint(-3, 3) for _ in range(lat.rank)])
        if not v.is_zero() and q_eval(lat, v, v) < 0:
            return v
    return None
