import math
from decimal import Decimal
from math import factorial

import pytest
from hypothesis import given, strategies as st

from hklat import (
    BoundQuery,
    BoundValue,
    birationality_bound,
    factorial_of_power,
    factorial_or_log,
    moduli_bound,
    moduli_dimension,
)
from hklat.bounds import (
    KIND_EXACT,
    KIND_LOGARITHMIC,
    log10_compare_int,
    log10_of_int,
)
from hklat.errors import (
    BoundOverflowError,
    DegenerateDimensionError,
    InvalidQueryError,
)

from .support import log10_factorial_oracle


def _stirling_oracle(m: float) -> float:
    """Leading Stirling terms in floats, for arguments far beyond
    factorial range; the omitted 1/(12m) correction is negligible
    there."""
    return (m + 0.5) * math.log10(m) - m / math.log(10) + 0.5 * math.log10(2 * math.pi)


def test_birationality_examples():
    assert birationality_bound(BoundQuery(1, 1, 1)).exact_value == 10
    assert birationality_bound(BoundQuery(1, 1, 2)).exact_value == 240
    assert birationality_bound(BoundQuery(2, 2, 2)).exact_value == 846720


def test_moduli_dimension_examples():
    assert moduli_dimension(1, 1, 1) == 4
    assert moduli_dimension(1, 2, -1) == 2
    assert moduli_dimension(2, 1, 1) == 10


def test_moduli_dimension_degenerate():
    with pytest.raises(DegenerateDimensionError):
        moduli_dimension(1, 1, -1)


def test_moduli_bound_examples():
    assert moduli_bound(1, 1, 1, 1).exact_value == 21
    assert moduli_bound(1, 1, 1, 2).exact_value == 846720
    assert moduli_bound(2, 1, 1, 1).exact_value == 78


def test_moduli_matches_birationality_on_grid():
    for a in range(1, 4):
        for k in range(1, 4):
            for eps in (1, -1):
                if 2 * a * a * k + 2 * eps <= 0:
                    continue
                dim = moduli_dimension(a, k, eps)
                for rho in range(1, 4):
                    lhs = moduli_bound(a, k, eps, rho)
                    rhs = birationality_bound(BoundQuery(dim // 2, 2 * k, rho))
                    assert lhs.kind == rhs.kind == KIND_EXACT
                    assert lhs.exact_value == rhs.exact_value


def test_birationality_monotone_in_each_argument():
    base = BoundQuery(2, 2, 2)
    v = birationality_bound(base).exact_value
    assert birationality_bound(BoundQuery(3, 2, 2)).exact_value > v
    assert birationality_bound(BoundQuery(2, 3, 2)).exact_value > v
    assert birationality_bound(BoundQuery(2, 2, 3)).exact_value > v


def test_factorial_or_log_exact_path():
    assert factorial_or_log(0).exact_value == 1
    assert factorial_or_log(1).exact_value == 1
    assert factorial_or_log(5).exact_value == 120
    assert factorial_or_log(5).kind == KIND_EXACT
    with pytest.raises(InvalidQueryError):
        factorial_or_log(-1)


def test_factorial_or_log_small_logarithmic_path():
    # below the Stirling cutoff the logarithmic form is log10 of the
    # exact factorial, so it matches the float oracle to float accuracy
    bv = factorial_or_log(500, exact_threshold=100)
    assert bv.kind == KIND_LOGARITHMIC
    oracle = log10_factorial_oracle(500)
    assert abs(float(bv.log10_value) - oracle) <= 1e-11 * oracle


def test_factorial_or_log_stirling_path():
    bv = factorial_or_log(10**4, exact_threshold=10**3)
    assert bv.kind == KIND_LOGARITHMIC
    assert bv.rel_err == Decimal("1e-9")
    assert str(bv.log10_value).startswith("35659.45427452078")
    oracle = log10_factorial_oracle(10**4)
    assert abs(float(bv.log10_value) - oracle) <= 1e-12 * oracle


def test_stirling_agrees_with_exact_across_threshold():
    exact = factorial_or_log(1200)
    assert exact.kind == KIND_EXACT
    log_form = factorial_or_log(1200, exact_threshold=10)
    assert log_form.kind == KIND_LOGARITHMIC
    true_log = Decimal(exact.exact_value).log10()
    assert abs(log_form.log10_value - true_log) <= Decimal("1e-15") * true_log


def test_factorial_of_power_exact():
    assert factorial_of_power(4, 0).exact_value == 1
    assert factorial_of_power(4, 1).exact_value == 24
    assert factorial_of_power(1, 10**9).exact_value == 1
    assert factorial_of_power(2, 10, 1024).exact_value == factorial(1024)


def test_factorial_of_power_materialized_log():
    # 2^10 = 1024 exceeds the threshold but is small enough to compute
    # with, so the factorial_or_log fallback runs on the real integer
    bv = factorial_of_power(2, 10, 1023)
    assert bv.kind == KIND_LOGARITHMIC
    true_log = Decimal(factorial(1024)).log10()
    assert abs(bv.log10_value - true_log) <= Decimal("1e-9") * true_log


def test_factorial_of_power_astronomic_argument():
    bv = factorial_of_power(10, 100)
    assert bv.kind == KIND_LOGARITHMIC
    oracle = _stirling_oracle(1e100)
    assert abs(float(bv.log10_value) - oracle) <= 1e-12 * oracle


def test_factorial_of_power_validation():
    with pytest.raises(InvalidQueryError):
        factorial_of_power(0, 2)
    with pytest.raises(InvalidQueryError):
        factorial_of_power(4, -1)


def test_bound_overflow_is_reported():
    with pytest.raises(BoundOverflowError):
        factorial_of_power(10, 10**60)


def test_bound_query_validation():
    for bad in (
        dict(n=0, cardA=1, rho=1),
        dict(n=1, cardA=0, rho=1),
        dict(n=1, cardA=1, rho=0),
        dict(n=-2, cardA=1, rho=1),
        dict(n=True, cardA=1, rho=1),
    ):
        with pytest.raises(InvalidQueryError):
            BoundQuery(**bad)


def test_moduli_validation():
    with pytest.raises(InvalidQueryError):
        moduli_dimension(1, 1, 0)
    with pytest.raises(InvalidQueryError):
        moduli_dimension(0, 1, 1)
    with pytest.raises(InvalidQueryError):
        moduli_bound(1, 1, 1, 0)


def test_bound_value_shape_enforced():
    with pytest.raises(ValueError):
        BoundValue(KIND_EXACT, None, None, None)
    with pytest.raises(ValueError):
        BoundValue(KIND_LOGARITHMIC, 5, Decimal(1), Decimal("1e-9"))
    with pytest.raises(ValueError):
        BoundValue("approximate", 5, None, None)


def test_log10_compare_against_exact_bound():
    bv = factorial_or_log(5)
    assert log10_compare_int(119, bv) is True
    assert log10_compare_int(120, bv) is True
    assert log10_compare_int(121, bv) is False


def test_log10_compare_bracketing():
    bv = BoundValue(KIND_LOGARITHMIC, None, Decimal(10), Decimal("1e-9"))
    assert log10_compare_int(10**9, bv) is True
    assert log10_compare_int(10**11, bv) is False
    assert log10_compare_int(10**10, bv) is None
    with pytest.raises(InvalidQueryError):
        log10_of_int(0)


@given(st.integers(min_value=0, max_value=300))
def test_exact_factorial_matches_stdlib(m):
    assert factorial_or_log(m).exact_value == factorial(m)


@given(st.integers(min_value=1001, max_value=5000))
def test_stirling_within_stated_error(m):
    bv = factorial_or_log(m, exact_threshold=1000)
    assert bv.kind == KIND_LOGARITHMIC
    oracle = log10_factorial_oracle(m)
    assert abs(float(bv.log10_value) - oracle) <= 1e-9 * oracle


@given(
    st.integers(min_value=1, max_value=6),
    st.integers(min_value=1, max_value=6),
    st.integers(min_value=1, max_value=3),
)
def test_birationality_exact_formula(n, cardA, rho):
    bv = birationality_bound(BoundQuery(n, cardA, rho))
    assert bv.kind == KIND_EXACT
    assert bv.exact_value == (n + 1) * (2 * n + 3) * factorial((4 * cardA) ** (rho - 1))
