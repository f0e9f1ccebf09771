"""Zariski-type decomposition against a finite list of prime classes.

A class D splits as D = P + N where N is supported on finitely many of
the context's prime exceptional classes, the support Gram matrix is
negative definite, P pairs nonnegatively with every prime, and
q(P, N) = 0. Existence is relative to the supplied prime list: when the
iteration runs into a support whose Gram matrix fails to be negative
definite, D is reported as not pseudo-effective with respect to that
list rather than decomposed approximately.

The solver grows the support greedily. Starting from the primes that
pair negatively with D, it solves the orthogonality conditions
q(D - sum a_i E_i, E_j) = 0 over the current support, then adds any
prime the candidate positive part still pairs negatively with. The
support only grows, so the loop ends after at most len(primes) rounds.
Uniqueness of the result makes the grow order irrelevant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import bounds, linalg
from .errors import (
    AmbiguousSupportError,
    InconsistentPrimeSetError,
    NonNegativeSquareError,
    NotPseudoEffectiveError,
    ShapeError,
)
from .cones import ConeContext
from .lattice import (
    Frame,
    FramedVector,
    Lattice,
    _require_frame,
    _require_rank,
    dual_class,
    primal,
    q_eval,
)


@dataclass(frozen=True)
class ZariskiDecomposition:
    positive: FramedVector
    negative: FramedVector
    support: tuple[int, ...]
    coefficients: tuple[Fraction, ...]
    denominator_lcm: int


@dataclass(frozen=True)
class VerificationReport:
    """Per-condition breakdown of a claimed decomposition.

    ``ok`` is the conjunction of the four condition fields. The support
    and coefficients are the ones used for the exceptional-combination
    check, whether supplied by the caller or recovered by solving.
    """

    ok: bool
    sum_matches: bool
    positive_nef: bool
    negative_combination: bool
    support_negative_definite: bool
    orthogonal: bool
    support: tuple[int, ...]
    coefficients: tuple[Fraction, ...]
    notes: tuple[str, ...]


@dataclass(frozen=True)
class DenominatorAudit:
    """Arithmetic of the coefficient denominators of a decomposition.

    ``support_det`` is |det| of the support Gram submatrix; the lcm of
    the coefficient denominators always divides it, by Cramer's rule.
    ``within_bound`` compares the lcm against factorial((4*cardA)^(rho-1))
    with rho the ambient rank; None means the logarithmic comparison
    was too close to call at the stated precision, which does not occur
    for honestly small lcm values.
    """

    lcm: int
    support_det: int
    lcm_divides_det: bool
    bound: "bounds.BoundValue"
    within_bound: bool | None


def _support_gram(ctx: ConeContext, support: tuple[int, ...]) -> list[list[Fraction]]:
    return [
        [q_eval(ctx.lattice, ctx.primes[i], ctx.primes[j]) for j in support]
        for i in support
    ]


def _check_vector(ctx: ConeContext, v, what: str) -> FramedVector:
    vec = v if isinstance(v, FramedVector) else primal(v)
    _require_frame(vec, Frame.PRIMAL)
    if len(vec) != ctx.lattice.rank:
        raise ShapeError(f"{what} has length {len(vec)}, expected {ctx.lattice.rank}")
    return vec


def zariski_decompose(ctx: ConeContext, D) -> ZariskiDecomposition:
    """Unique decomposition of D relative to ctx.primes.

    Raises NotPseudoEffectiveError when a support Gram matrix fails to
    be negative definite, and InconsistentPrimeSetError when the solved
    coefficients are not all nonnegative. Zero coefficients are dropped
    from the reported support.
    """
    d_vec = _check_vector(ctx, D, "D")
    support: list[int] = [
        i for i, e in enumerate(ctx.primes) if q_eval(ctx.lattice, d_vec, e) < 0
    ]
    coeffs: list[Fraction] = []
    while True:
        if support:
            gram = _support_gram(ctx, tuple(support))
            if not linalg.is_negative_definite(gram):
                raise NotPseudoEffectiveError(
                    "support Gram matrix is not negative definite; input is not "
                    "pseudo-effective relative to the supplied primes")
            rhs = [q_eval(ctx.lattice, d_vec, ctx.primes[j]) for j in support]
            coeffs = list(linalg.solve_exact(gram, rhs))
            if any(c < 0 for c in coeffs):
                raise InconsistentPrimeSetError(
                    "solved coefficients contain a negative entry")
        negative = primal([0] * ctx.lattice.rank)
        for idx, c in zip(support, coeffs):
            negative = negative + ctx.primes[idx].scaled(c)
        positive = d_vec - negative
        grew = False
        for i, e in enumerate(ctx.primes):
            if i not in support and q_eval(ctx.lattice, positive, e) < 0:
                support.append(i)
                grew = True
        if not grew:
            break
    kept = [(i, c) for i, c in zip(support, coeffs) if c != 0]
    kept.sort()
    support_t = tuple(i for i, _ in kept)
    coeffs_t = tuple(c for _, c in kept)
    denom = lcm(*(c.denominator for c in coeffs_t)) if coeffs_t else 1
    return ZariskiDecomposition(positive, negative, support_t, coeffs_t, denom)


def verify_decomposition(
    ctx: ConeContext,
    D,
    P,
    N,
    support: tuple[int, ...] | None = None,
    coefficients: tuple[Fraction, ...] | None = None,
) -> VerificationReport:
    """Check the defining conditions of a claimed decomposition exactly.

    Without a support hint the representation of N over ctx.primes is
    recovered by linear solve; if the primes are linearly dependent in
    a way that leaves the representation underdetermined, that is
    surfaced as AmbiguousSupportError and the caller must pass the
    support and coefficients explicitly.
    """
    d_vec = _check_vector(ctx, D, "D")
    p_vec = _check_vector(ctx, P, "P")
    n_vec = _check_vector(ctx, N, "N")
    notes: list[str] = []
    sum_matches = (p_vec + n_vec) == d_vec
    if not sum_matches:
        notes.append("P + N differs from D")
    positive_nef = all(q_eval(ctx.lattice, p_vec, e) >= 0 for e in ctx.primes)
    if not positive_nef:
        notes.append("P pairs negatively with some prime")

    if support is not None:
        if coefficients is None or len(coefficients) != len(support):
            raise AmbiguousSupportError("support hint requires matching coefficients")
        used_support = tuple(support)
        used_coeffs = tuple(Fraction(c) for c in coefficients)
        recon = primal([0] * ctx.lattice.rank)
        for idx, c in zip(used_support, used_coeffs):
            recon = recon + ctx.primes[idx].scaled(c)
        negative_combination = recon == n_vec and all(c > 0 for c in used_coeffs)
    else:
        if ctx.primes:
            cols = [[e.coords[r] for e in ctx.primes] for r in range(ctx.lattice.rank)]
            particular, free = linalg.solve_general(cols, list(n_vec.coords))
        else:
            particular, free = (() if n_vec.is_zero() else None), 0
        if particular is not None and free > 0:
            raise AmbiguousSupportError(
                "representation of N over the primes is underdetermined; "
                "pass support and coefficients explicitly")
        if particular is None:
            negative_combination = False
            used_support, used_coeffs = (), ()
            notes.append("N is not a combination of the primes")
        else:
            kept = [(i, Fraction(c)) for i, c in enumerate(particular) if c != 0]
            used_support = tuple(i for i, _ in kept)
            used_coeffs = tuple(c for _, c in kept)
            negative_combination = all(c > 0 for c in used_coeffs)
            if not negative_combination:
                notes.append("recovered coefficients are not all positive")
    if support is not None and not negative_combination:
        notes.append("hinted combination does not reproduce N with positive coefficients")

    if used_support:
        gram = _support_gram(ctx, used_support)
        support_negative_definite = linalg.is_negative_definite(gram)
    else:
        support_negative_definite = True
    if not support_negative_definite:
        notes.append("support Gram matrix is not negative definite")
    orthogonal = q_eval(ctx.lattice, p_vec, n_vec) == 0
    if not orthogonal:
        notes.append("q(P, N) is nonzero")
    ok = (sum_matches and positive_nef and negative_combination
          and support_negative_definite and orthogonal)
    return VerificationReport(
        ok, sum_matches, positive_nef, negative_combination,
        support_negative_definite, orthogonal, used_support, used_coeffs,
        tuple(notes))


def ruling_curve_class(lattice: Lattice, E: FramedVector) -> FramedVector:
    """The dual class (-2 / q(E,E)) * G E attached to a negative class.

    Its primal lift is the positive multiple (-2/q(E,E)) E of E, so E
    and the returned class generate the same ray up to positive
    scaling.
    """
    _require_frame(E, Frame.PRIMAL)
    _require_rank(lattice, E)
    E.ints()
    s = q_eval(lattice, E, E)
    if s >= 0:
        raise NonNegativeSquareError("ruling class requires negative self-pairing")
    return dual_class(lattice, E).scaled(Fraction(-2) / s)


def denominator_audit(
    ctx: ConeContext,
    dec: ZariskiDecomposition,
    cardA: int,
    exact_threshold: int | None = None,
) -> DenominatorAudit:
    """Denominator arithmetic of a decomposition.

    rho is taken to be the ambient lattice rank. The factorial bound is
    evaluated exactly below the threshold and logarithmically above it;
    the logarithmic comparison brackets log10(lcm) against the stated
    relative error and reports None only if the brackets disagree.
    """
    if cardA < 1:
        raise ValueError("cardA must be a positive integer")
    gram = _support_gram(ctx, dec.support)
    int_gram = [[int(x) for x in row] for row in gram]
    support_det = abs(linalg.bareiss_det(int_gram))
    divides = support_det % dec.denominator_lcm == 0
    rho = ctx.lattice.rank
    if exact_threshold is None:
        exact_threshold = bounds.DEFAULT_EXACT_THRESHOLD
    bound = bounds.factorial_of_power(4 * cardA, rho - 1, exact_threshold)
    if bound.kind == "exact":
        within = dec.denominator_lcm <= bound.exact_value
    else:
        within = bounds.log10_compare_int(dec.denominator_lcm, bound)
    return DenominatorAudit(dec.denominator_lcm, support_det, divides, bound, within)
