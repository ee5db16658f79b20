"""Exact multivariate Laurent polynomials over the integers.

A `LaurentPoly` maps exponent vectors (tuples of machine integers, possibly
negative) to non-zero Python integers. Values are immutable and hashable.

The text form lists terms in graded lexicographic order, highest first, for
example `x1^2*x2^-1 - 3*x2 + 1`. Terms are separated by ` + ` or ` - ` with
surrounding spaces, so negative exponents never need quoting.
"""

### IMPORTS
### ============================================================================
# Future
from __future__ import annotations

# Standard Library
from fractions import Fraction
import heapq
import re
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

### CONSTANTS
### ============================================================================
Monomial = Tuple[int, ...]

_TERM_SPLIT = re.compile(r"\s+([+-])\s+")
_FACTOR = re.compile(r"^x(\d+)(?:\^(-?\d+))?$")


### CLASSES
### ============================================================================
class LaurentError(ArithmeticError):
    """Base class for Laurent polynomial errors."""


class NotDivisible(LaurentError):
    """Raised when a division of Laurent polynomials is not exact."""


class ZeroDivisor(LaurentError, ZeroDivisionError):
    """Raised when dividing by the zero polynomial."""


class LaurentParseError(LaurentError, ValueError):
    """Raised when Laurent polynomial text cannot be parsed."""


class LaurentPoly:
    """A Laurent polynomial in `nvars` variables `x1..xn` with integer coefficients."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, int] | None = None) -> None:
        clean: Dict[Monomial, int] = {}
        for exponents, coefficient in (terms or {}).items():
            if len(exponents) != nvars:
                raise LaurentError(f"monomial {exponents} does not have {nvars} exponents")
            if coefficient:
                clean[tuple(exponents)] = coefficient
        self.nvars = nvars
        self._terms = clean
        self._hash: int | None = None
        return

    ## Constructors
    ## -------------------------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> LaurentPoly:
        return cls(nvars)

    @classmethod
    def constant(cls, value: int, nvars: int) -> LaurentPoly:
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def one(cls, nvars: int) -> LaurentPoly:
        return cls.constant(1, nvars)

    @classmethod
    def monomial(cls, exponents: Sequence[int], coefficient: int = 1) -> LaurentPoly:
        return cls(len(exponents), {tuple(exponents): coefficient})

    @classmethod
    def variable(cls, index: int, nvars: int) -> LaurentPoly:
        """The variable `x{index+1}` (0-based `index`)."""
        if not 0 <= index < nvars:
            raise LaurentError(f"variable index {index} out of range for {nvars} variables")
        exponents = [0] * nvars
        exponents[index] = 1
        return cls.monomial(exponents)

    ## Inspection
    ## -------------------------------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, int]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def sorted_terms(self) -> List[Tuple[Monomial, int]]:
        """Terms in graded lexicographic order, highest first."""
        return sorted(self._terms.items(), key=lambda item: (sum(item[0]), item[0]), reverse=True)

    def min_exponents(self) -> Monomial:
        """Componentwise minimum exponent over all terms (zeros for the zero polynomial)."""
        if not self._terms:
            return (0,) * self.nvars
        return tuple(min(column) for column in zip(*self._terms))

    def evaluate(self, values: Sequence[Fraction | int]) -> Fraction:
        """Evaluate at a point; every variable with a negative exponent must be non-zero."""
        if len(values) != self.nvars:
            raise LaurentError(f"expected {self.nvars} values, got {len(values)}")
        point = [Fraction(v) for v in values]
        total = Fraction(0)
        for exponents, coefficient in self._terms.items():
            term = Fraction(coefficient)
            for value, e in zip(point, exponents):
                if e:
                    if e < 0 and value == 0:
                        raise ZeroDivisor("negative power of a variable evaluated at 0")
                    term *= value**e
            total += term
        return total

    ## Arithmetic
    ## -------------------------------------------------------------------------
    def shift(self, exponents: Sequence[int]) -> LaurentPoly:
        """Multiply by the monomial with the given exponents."""
        return LaurentPoly(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exponents)): c for e, c in self._terms.items()},
        )

    def __add__(self, other: object) -> LaurentPoly:
        other_poly = self._coerce(other)
        result = dict(self._terms)
        for exponents, coefficient in other_poly._terms.items():
            result[exponents] = result.get(exponents, 0) + coefficient
        return LaurentPoly(self.nvars, result)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: object) -> LaurentPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other: object) -> LaurentPoly:
        return self._coerce(other) - self

    def __mul__(self, other: object) -> LaurentPoly:
        return multiply(self, self._coerce(other))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> LaurentPoly:
        if exponent < 0:
            if not self.is_monomial():
                raise NotDivisible("only monomials have Laurent inverses")
            ((exponents, coefficient),) = self._terms.items()
            if coefficient not in (1, -1):
                raise NotDivisible(f"coefficient {coefficient} is not a unit")
            inverse = LaurentPoly(self.nvars, {tuple(-e for e in exponents): coefficient})
            return inverse ** (-exponent)
        result = LaurentPoly.one(self.nvars)
        base = self
        while exponent:
            if exponent & 1:
                result = multiply(result, base)
            exponent >>= 1
            if exponent:
                base = multiply(base, base)
        return result

    ## Comparison and display
    ## -------------------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self.nvars}, {format_laurent(self)!r})"

    def __str__(self) -> str:
        return format_laurent(self)

    def _coerce(self, other: object) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise LaurentError(f"variable count mismatch: {self.nvars} != {other.nvars}")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.nvars)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")


class RationalFn:
    """A quotient of Laurent polynomials, kept unreduced.

    Equality is tested by cross-multiplication.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: LaurentPoly, denominator: LaurentPoly) -> None:
        if denominator.is_zero():
            raise ZeroDivisor("rational function with zero denominator")
        if numerator.nvars != denominator.nvars:
            raise LaurentError("numerator and denominator have different variable counts")
        self.numerator = numerator
        self.denominator = denominator
        return

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> RationalFn:
        return cls(p, LaurentPoly.one(p.nvars))

    def __mul__(self, other: RationalFn) -> RationalFn:
        return RationalFn(self.numerator * other.numerator, self.denominator * other.denominator)

    def __add__(self, other: RationalFn) -> RationalFn:
        return RationalFn(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def __truediv__(self, other: RationalFn) -> RationalFn:
        return RationalFn(self.numerator * other.denominator, self.denominator * other.numerator)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    __hash__ = None  # type: ignore[assignment]

    def as_laurent(self) -> LaurentPoly:
        """The quotient as a Laurent polynomial.

        Raises:
            NotDivisible: the quotient is not a Laurent polynomial
        """
        return exact_div(self.numerator, self.denominator)

    def __repr__(self) -> str:
        return f"RationalFn(({self.numerator}) / ({self.denominator}))"


### FUNCTIONS
### ============================================================================
def multiply(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Exact product.

    Raises:
        LaurentError: variable counts differ
    """
    if p.nvars != q.nvars:
        raise LaurentError(f"variable count mismatch: {p.nvars} != {q.nvars}")
    result: Dict[Monomial, int] = {}
    for e1, c1 in p.terms.items():
        for e2, c2 in q.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            result[e] = result.get(e, 0) + c1 * c2
    return LaurentPoly(p.nvars, result)


def product(factors: Iterable[LaurentPoly], nvars: int) -> LaurentPoly:
    """Product of `factors`; the empty product is 1."""
    result = LaurentPoly.one(nvars)
    for factor in factors:
        result = multiply(result, factor)
    return result


def exact_div(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Return `r` with `r * q == p`.

    Monomial factors of `q` are treated as exponent shifts, the remaining
    polynomial division runs in lexicographic order over the integers.

    Raises:
        ZeroDivisor: `q` is zero
        NotDivisible: no such Laurent polynomial exists
        LaurentError: variable counts differ
    """
    if p.nvars != q.nvars:
        raise LaurentError(f"variable count mismatch: {p.nvars} != {q.nvars}")
    if q.is_zero():
        raise ZeroDivisor("division by the zero Laurent polynomial")
    if p.is_zero():
        return LaurentPoly.zero(p.nvars)

    q_shift = q.min_exponents()
    p_shift = p.min_exponents()
    divisor = q.shift([-e for e in q_shift])
    dividend = p.shift([-e for e in p_shift])
    if divisor.is_monomial():
        ((_, coefficient),) = divisor.terms.items()
        if any(c % coefficient for c in dividend.terms.values()):
            raise NotDivisible(f"coefficients of {p} are not divisible by {coefficient}")
        quotient = LaurentPoly(p.nvars, {e: c // coefficient for e, c in dividend.terms.items()})
    else:
        quotient = _divide_polynomials(dividend, divisor)
    return quotient.shift([a - b for a, b in zip(p_shift, q_shift)])


def format_laurent(p: LaurentPoly) -> str:
    """Text form of `p`, see the module docstring."""
    if p.is_zero():
        return "0"
    pieces: List[str] = []
    for index, (exponents, coefficient) in enumerate(p.sorted_terms()):
        factors = []
        for var, e in enumerate(exponents, start=1):
            if e == 1:
                factors.append(f"x{var}")
            elif e != 0:
                factors.append(f"x{var}^{e}")
        magnitude = abs(coefficient)
        if not factors:
            body = str(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(magnitude)] + factors)
        if index == 0:
            pieces.append(("-" if coefficient < 0 else "") + body)
        else:
            pieces.append((" - " if coefficient < 0 else " + ") + body)
    return "".join(pieces)


def parse_laurent(text: str, nvars: int) -> LaurentPoly:
    """Parse the text form produced by `format_laurent`.

    Raises:
        LaurentParseError: malformed text or a variable outside `x1..x{nvars}`
    """
    text = text.strip()
    if not text:
        raise LaurentParseError("empty Laurent polynomial")
    pieces = _TERM_SPLIT.split(text)
    signs = ["+"] + pieces[1::2]
    bodies = pieces[0::2]
    terms: Dict[Monomial, int] = {}
    for index, (sign, body) in enumerate(zip(signs, bodies)):
        if index == 0 and body.startswith("-"):
            sign, body = "-", body[1:]
        exponents, coefficient = _parse_term(body, nvars)
        if sign == "-":
            coefficient = -coefficient
        terms[exponents] = terms.get(exponents, 0) + coefficient
    return LaurentPoly(nvars, terms)


### PRIVATE
### ============================================================================
def _parse_term(body: str, nvars: int) -> Tuple[Monomial, int]:
    coefficient = 1
    exponents = [0] * nvars
    if not body:
        raise LaurentParseError("empty term")
    for factor in body.split("*"):
        factor = factor.strip()
        if factor.isdigit():
            coefficient *= int(factor)
            continue
        match = _FACTOR.match(factor)
        if match is None:
            raise LaurentParseError(f"cannot parse factor {factor!r}")
        var = int(match.group(1))
        if not 1 <= var <= nvars:
            raise LaurentParseError(f"variable x{var} outside x1..x{nvars}")
        exponents[var - 1] += int(match.group(2)) if match.group(2) is not None else 1
    return tuple(exponents), coefficient


def _divide_polynomials(dividend: LaurentPoly, divisor: LaurentPoly) -> LaurentPoly:
    """Exact division of polynomials (no negative exponents) in lexicographic order."""
    lead_exponents, lead_coefficient = max(divisor.terms.items())
    remainder: Dict[Monomial, int] = dict(dividend.terms)
    # max-heap on exponents via negation, stale entries skipped on pop
    heap: List[Tuple[int, ...]] = [tuple(-e for e in exps) for exps in remainder]
    heapq.heapify(heap)
    quotient: Dict[Monomial, int] = {}
    while remainder:
        top = tuple(-e for e in heapq.heappop(heap))
        if top not in remainder:
            continue
        coefficient = remainder[top]
        step = tuple(a - b for a, b in zip(top, lead_exponents))
        if min(step) < 0 or coefficient % lead_coefficient:
            raise NotDivisible(f"{dividend} is not divisible by {divisor}")
        factor = coefficient // lead_coefficient
        quotient[step] = factor
        for exps, c in divisor.terms.items():
            target = tuple(a + b for a, b in zip(exps, step))
            value = remainder.get(target, 0) - factor * c
            if value:
                if target not in remainder:
                    heapq.heappush(heap, tuple(-e for e in target))
                remainder[target] = value
            else:
                remainder.pop(target, None)
    return LaurentPoly(dividend.nvars, quotient)
