"""Effective birationality bounds, exactly or in logarithmic form.

The central quantity is prefactor * ((base)^(rho-1))! where the
factorial argument explodes quickly. Below a caller-set threshold the
factorial is computed exactly as a big integer. Above it the value is
carried as log10 with a stated relative error of 1e-9, computed from
the Stirling series with an explicit remainder bound, so the two
representations are interchangeable up to documented precision and
nothing silently degrades to floating point.

All Decimal work runs at 50 significant digits. The series used is

    ln m! = (m + 1/2) ln m - m + ln(2 pi)/2
            + 1/(12 m) - 1/(360 m^3) + 1/(1260 m^5) - 1/(1680 m^7)

whose remainder is below 1/(1188 m^9); the logarithmic path only runs
for m >= 1000, where that remainder is under 1e-27 and the stated
1e-9 is extremely conservative. For m below 1000 the logarithmic form
is taken as log10 of the exact factorial instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, Overflow, localcontext
from math import factorial

from .errors import BoundOverflowError, DegenerateDimensionError, InvalidQueryError

DEFAULT_EXACT_THRESHOLD = 10**6
STATED_REL_ERR = Decimal("1e-9")

_PREC = 50
_SMALL_LOG_CUTOFF = 1000
# Decimal carries no pi; 60 digits, more than _PREC needs.
_PI = Decimal("3.14159265358979323846264338327950288419716939937510582097494")

KIND_EXACT = "exact"
KIND_LOGARITHMIC = "logarithmic"


@dataclass(frozen=True)
class BoundValue:
    """Either an exact big integer or log10 with a stated error bound."""

    kind: str
    exact_value: int | None
    log10_value: Decimal | None
    rel_err: Decimal | None

    def __post_init__(self):
        if self.kind == KIND_EXACT:
            if self.exact_value is None or self.log10_value is not None:
                raise ValueError("exact kind carries exact_value only")
        elif self.kind == KIND_LOGARITHMIC:
            if self.log10_value is None or self.exact_value is not None:
                raise ValueError("logarithmic kind carries log10_value only")
        else:
            raise ValueError(f"unknown kind {self.kind!r}")


@dataclass(frozen=True)
class BoundQuery:
    """n is the half-dimension, cardA the discriminant-group order, rho
    the Picard number (or h^{1,1} for the family-wide reading)."""

    n: int
    cardA: int
    rho: int

    def __post_init__(self):
        for name in ("n", "cardA", "rho"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise InvalidQueryError(f"{name} must be a positive integer")


def _exact(value: int) -> BoundValue:
    return BoundValue(KIND_EXACT, value, None, None)


def _logarithmic(log10_value: Decimal) -> BoundValue:
    return BoundValue(KIND_LOGARITHMIC, None, log10_value, STATED_REL_ERR)


def _log10_factorial(m_dec: Decimal, ln_m: Decimal) -> Decimal:
    # Stirling series; caller guarantees m >= _SMALL_LOG_CUTOFF
    with localcontext() as c:
        c.prec = _PREC
        c.traps[Overflow] = True
        half = Decimal(1) / 2
        ln_fact = (m_dec + half) * ln_m - m_dec + (2 * _PI).ln() / 2
        m2 = m_dec * m_dec
        m3 = m2 * m_dec
        m5 = m3 * m2
        m7 = m5 * m2
        ln_fact += (Decimal(1) / (12 * m_dec) - Decimal(1) / (360 * m3)
                    + Decimal(1) / (1260 * m5) - Decimal(1) / (1680 * m7))
        return ln_fact / Decimal(10).ln()


def factorial_or_log(m: int, exact_threshold: int = DEFAULT_EXACT_THRESHOLD) -> BoundValue:
    """m! exactly when m <= exact_threshold, else its log10."""
    if m < 0:
        raise InvalidQueryError("factorial argument must be nonnegative")
    if m <= exact_threshold:
        return _exact(factorial(m))
    try:
        if m < _SMALL_LOG_CUTOFF:
            with localcontext() as c:
                c.prec = _PREC
                c.traps[Overflow] = True
                return _logarithmic(Decimal(factorial(m)).log10())
        with localcontext() as c:
            c.prec = _PREC
            c.traps[Overflow] = True
            m_dec = +Decimal(m)
            return _logarithmic(_log10_factorial(m_dec, m_dec.ln()))
    except Overflow as exc:
        raise BoundOverflowError("logarithmic representation overflowed") from exc


def _power_fits(base: int, exp: int, threshold: int) -> tuple[bool, int | None]:
    # decide base**exp <= threshold without materializing huge powers;
    # returns (fits, value or None)
    if threshold < 0:
        return False, None
    if exp == 0 or base == 1:
        return 1 <= threshold, 1
    if base == 0:
        return 0 <= threshold, 0
    bl = base.bit_length()
    if (bl - 1) * exp > threshold.bit_length():
        return False, None
    # here exp <= threshold.bit_length() since bl - 1 >= 1, so the
    # power is at most bl * (threshold.bit_length() + 1) bits: safe
    value = base**exp
    return value <= threshold, value


def factorial_of_power(base: int, exp: int, exact_threshold: int = DEFAULT_EXACT_THRESHOLD) -> BoundValue:
    """factorial(base**exp) without materializing astronomic arguments.

    The exact path requires base**exp <= exact_threshold. Otherwise the
    argument enters the Stirling series as a 50-digit Decimal computed
    by exponentiation, never as a full integer, so cardA and rho far
    beyond any geometric range still evaluate in microseconds.
    """
    if base < 1 or exp < 0:
        raise InvalidQueryError("factorial_of_power requires base >= 1 and exp >= 0")
    fits, value = _power_fits(base, exp, exact_threshold)
    if fits:
        return _exact(factorial(value))
    if value is not None:
        return factorial_or_log(value, exact_threshold)
    try:
        with localcontext() as c:
            c.prec = _PREC
            c.traps[Overflow] = True
            ln_m = exp * Decimal(base).ln()
            m_dec = (ln_m).exp()
            return _logarithmic(_log10_factorial(m_dec, ln_m))
    except Overflow as exc:
        raise BoundOverflowError("factorial argument exceeds representable exponents") from exc


def log10_of_int(value: int) -> Decimal:
    if value < 1:
        raise InvalidQueryError("log10 comparison requires a positive integer")
    with localcontext() as c:
        c.prec = _PREC
        return Decimal(value).log10()


def log10_compare_int(value: int, bound: BoundValue) -> bool | None:
    """Whether value <= bound for a logarithmic bound, bracketing the
    stated relative error. None when the brackets disagree."""
    if bound.kind == KIND_EXACT:
        return value <= bound.exact_value
    lv = log10_of_int(value)
    lo = bound.log10_value * (1 - bound.rel_err)
    hi = bound.log10_value * (1 + bound.rel_err)
    if bound.log10_value < 0:
        lo, hi = hi, lo
    if lv <= lo:
        return True
    if lv > hi:
        return False
    return None


def _combine_prefactor(prefactor: int, tail: BoundValue) -> BoundValue:
    if tail.kind == KIND_EXACT:
        return _exact(prefactor * tail.exact_value)
    with localcontext() as c:
        c.prec = _PREC
        return _logarithmic(tail.log10_value + Decimal(prefactor).log10())


def birationality_bound(query: BoundQuery, exact_threshold: int = DEFAULT_EXACT_THRESHOLD) -> BoundValue:
    """(n+1)(2n+3) * ((4*cardA)^(rho-1))!

    The prefactor is (1/2)(2n+2)(2n+3), always an integer. The bracket
    is read as grouping: the factorial applies to the whole power.
    """
    prefactor = (query.n + 1) * (2 * query.n + 3)
    tail = factorial_of_power(4 * query.cardA, query.rho - 1, exact_threshold)
    return _combine_prefactor(prefactor, tail)


def moduli_dimension(a: int, k: int, eps: int) -> int:
    """2 a^2 k + 2 eps, with eps = +1 or -1; must come out positive."""
    for name, v in (("a", a), ("k", k)):
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise InvalidQueryError(f"{name} must be a positive integer")
    if eps not in (1, -1):
        raise InvalidQueryError("eps must be +1 or -1")
    dim = 2 * a * a * k + 2 * eps
    if dim <= 0:
        raise DegenerateDimensionError(f"dimension 2*{a}^2*{k} + 2*({eps}) = {dim} is not positive")
    return dim


def moduli_bound(a: int, k: int, eps: int, rho: int,
                 exact_threshold: int = DEFAULT_EXACT_THRESHOLD) -> BoundValue:
    """(1/2)(dim+2)(dim+3) * ((8k)^(rho-1))! with dim = 2 a^2 k + 2 eps.

    Agrees exactly with birationality_bound at n = dim/2, cardA = 2k.
    """
    if not isinstance(rho, int) or isinstance(rho, bool) or rho < 1:
        raise InvalidQueryError("rho must be a positive integer")
    dim = moduli_dimension(a, k, eps)
    prefactor = (dim + 2) * (dim + 3) // 2
    tail = factorial_of_power(8 * k, rho - 1, exact_threshold)
    return _combine_prefactor(prefactor, tail)
