### IMPORTS
### ============================================================================
# Future
from __future__ import annotations

# Standard Library
from fractions import Fraction

# Installed
import pytest

# Package
from clusterscope.laurent import (
    LaurentError,
    LaurentParseError,
    LaurentPoly,
    NotDivisible,
    RationalFn,
    ZeroDivisor,
    exact_div,
    format_laurent,
    parse_laurent,
    product,
)

### SETUP
### ============================================================================
N = 4
X1, X2, X3, X4 = (LaurentPoly.variable(i, N) for i in range(N))


def x(text: str) -> LaurentPoly:
    return parse_laurent(text, N)


### TESTS
### ============================================================================
def test_arithmetic():
    p = (X1 + 1) * (X1 - 1)
    assert p == X1**2 - 1
    assert p - p == 0
    assert (X1 * X2**-1) * X2 == X1
    assert 2 - X1 == -(X1 - 2)
    assert LaurentPoly.zero(N).is_zero()
    assert (X1 + X2).terms == {(1, 0, 0, 0): 1, (0, 1, 0, 0): 1}
    return


def test_zero_coefficients_are_dropped():
    p = LaurentPoly(2, {(1, 0): 0, (0, 1): 3})
    assert p.terms == {(0, 1): 3}
    assert p.is_monomial()
    return


def test_hash_and_equality():
    assert hash(X1 + X2) == hash(X2 + X1)
    assert len({X1 + X2, X2 + X1, X1}) == 2
    assert LaurentPoly.one(N) == 1
    return


def test_variable_count_mismatch():
    with pytest.raises(LaurentError):
        X1 + LaurentPoly.variable(0, 2)
    with pytest.raises(LaurentError):
        LaurentPoly.variable(4, N)
    with pytest.raises(LaurentError):
        LaurentPoly(2, {(1,): 1})
    return


def test_negative_power_of_polynomial():
    with pytest.raises(NotDivisible):
        (X1 + 1) ** -1
    with pytest.raises(NotDivisible):
        (2 * X1) ** -1
    assert (-X1) ** -2 == X1**-2
    return


def test_min_exponents_and_shift():
    p = X1**-2 * X2 + X1 * X3**-1
    assert p.min_exponents() == (-2, 0, -1, 0)
    assert p.shift([2, 0, 1, 0]) == X3 * X2 + X1**3
    return


def test_evaluate():
    p = (X1 * X4 + X2) * X3**-1
    assert p.evaluate([1, 2, 3, 4]) == Fraction(2)
    assert (X1**-1).evaluate([2, 0, 0, 0]) == Fraction(1, 2)
    with pytest.raises(ZeroDivisor):
        p.evaluate([1, 1, 0, 1])
    with pytest.raises(LaurentError):
        p.evaluate([1, 2])
    return


def test_exact_div():
    numerator = X1 * X4 + X2
    assert exact_div(numerator * (X3 + X1**2), X3 + X1**2) == numerator
    assert exact_div(numerator, X3) == numerator * X3**-1
    assert exact_div(6 * X1**2, -3 * X1) == -2 * X1
    assert exact_div(LaurentPoly.zero(N), X1 + 1) == 0
    return


def test_exact_div_with_negative_exponents():
    a = X1**-1 * (X2 + 1)
    b = X2**-2 * (X1 + X3)
    assert exact_div(a * b, b) == a
    return


@pytest.mark.parametrize(
    "p, q",
    [
        (X1 + 1, X2 + 1),
        (X1**2 + 1, X1 + 1),
        (3 * X1, 2 * X1),
    ],
)
def test_exact_div_not_divisible(p, q):
    with pytest.raises(NotDivisible):
        exact_div(p, q)
    return


def test_exact_div_by_zero():
    with pytest.raises(ZeroDivisor):
        exact_div(X1, LaurentPoly.zero(N))
    return


def test_product():
    assert product([X1, X2, X1], N) == X1**2 * X2
    assert product([], N) == 1
    return


@pytest.mark.parametrize(
    "p, text",
    [
        (LaurentPoly.zero(N), "0"),
        (LaurentPoly.constant(-3, N), "-3"),
        ((X1 * X4 + X2) * X3**-1, "x1*x3^-1*x4 + x2*x3^-1"),
        (X1**2 * X2**-1 - 3 * X2 + 1, "x1^2*x2^-1 - 3*x2 + 1"),
        (-X1 + X2, "-x1 + x2"),
    ],
)
def test_format_laurent(p, text):
    assert format_laurent(p) == text
    assert str(p) == text
    assert parse_laurent(text, N) == p
    return


def test_parse_laurent_collects_like_terms():
    assert x("x1 + 2*x1 - x2") == 3 * X1 - X2
    assert x("x1*x1") == X1**2
    return


@pytest.mark.parametrize("text", ["", "x5", "y1", "x1 +", "x1^a", "x1 + + x2"])
def test_parse_laurent_errors(text):
    with pytest.raises(LaurentParseError):
        parse_laurent(text, N)
    return


def test_rational_functions():
    a = RationalFn(X2 + 1, X1)
    b = RationalFn(X1 + 1, X2)
    total = a + b
    assert total == RationalFn(X2**2 + X2 + X1**2 + X1, X1 * X2)
    assert (a * b).as_laurent() == exact_div((X1 + 1) * (X2 + 1), X1 * X2)
    assert a / a == RationalFn.from_poly(LaurentPoly.one(N))
    with pytest.raises(NotDivisible):
        RationalFn(X1 + 1, X1 + X2).as_laurent()
    with pytest.raises(ZeroDivisor):
        RationalFn(X1, LaurentPoly.zero(N))
    return
