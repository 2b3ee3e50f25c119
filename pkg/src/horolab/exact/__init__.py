"""Exact rational arithmetic layer: polynomials, rational functions,
truncated series, valuations and heights.  Everything downstream that
claims exactness routes through this package."""

from fractions import Fraction

from .polynomials import Polynomial
from .ratfun import RationalFunction
from .series import TruncatedSeries
from .valuations import (
    factorial_valuation,
    height,
    int_valuation,
    is_prime,
    padic_valuation,
    polynomial_height,
    prime_support,
    primes_up_to,
    vector_height,
)


def taylor_expand(f: RationalFunction, base_point, truncation_order: int) -> TruncatedSeries:
    """Exact Taylor expansion of a rational function at an ordinary point."""
    coeffs = f.taylor_coefficients_at(Fraction(base_point), truncation_order + 1)
    return TruncatedSeries(base_point, coeffs)


__all__ = [
    "Fraction",
    "Polynomial",
    "RationalFunction",
    "TruncatedSeries",
    "taylor_expand",
    "padic_valuation",
    "int_valuation",
    "factorial_valuation",
    "is_prime",
    "primes_up_to",
    "prime_support",
    "height",
    "vector_height",
    "polynomial_height",
]
