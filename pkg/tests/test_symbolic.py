"""Exact ring of rational functions in (z, x, a, b, c) with log x powers."""

from fractions import Fraction

import mpmath as mp
import pytest

from horolab.errors import SymbolicDomainError, ZeroDenominatorError
from horolab.symbolic import (
    ONE,
    ZERO,
    SymbolicFunction,
    SymbolicPolynomial,
    from_fraction,
    parse_symbolic,
    symbol,
)

Z = symbol("z")
X = symbol("x")
A = symbol("a")
B = symbol("b")
L = symbol("L")


class TestPolynomialRing:
    def test_constant_and_variable_text(self):
        assert SymbolicPolynomial.constant(Fraction(3, 2)).text() == "3/2"
        assert SymbolicPolynomial.variable("L").text() == "log(x)"

    def test_square_of_binomial(self):
        p = SymbolicPolynomial.variable("x") + SymbolicPolynomial.variable("L")
        expected = (
            SymbolicPolynomial.variable("x") ** 2
            + (SymbolicPolynomial.variable("x") * SymbolicPolynomial.variable("L")).scaled(2)
            + SymbolicPolynomial.variable("L") ** 2
        )
        assert p**2 == expected

    def test_cancellation_to_zero(self):
        x = SymbolicPolynomial.variable("x")
        one = SymbolicPolynomial.constant(1)
        assert ((x + one) * (x - one) - (x * x - one)).is_zero()

    def test_partial_derivatives_are_formal(self):
        p = SymbolicPolynomial.variable("z") ** 2 * SymbolicPolynomial.variable("a")
        assert p.partial("z") == (
            SymbolicPolynomial.variable("z") * SymbolicPolynomial.variable("a")
        ).scaled(2)
        assert p.partial("L").is_zero()

    def test_coefficients_in_z(self):
        poly = (
            SymbolicPolynomial.variable("z") ** 2 * SymbolicPolynomial.variable("x")
            + SymbolicPolynomial.variable("z") * SymbolicPolynomial.variable("L")
            + SymbolicPolynomial.constant(3)
        )
        grouped = poly.coefficients_in("z")
        assert set(grouped) == {0, 1, 2}
        assert grouped[2] == SymbolicPolynomial.variable("x")
        assert grouped[1] == SymbolicPolynomial.variable("L")
        assert grouped[0] == SymbolicPolynomial.constant(3)

    def test_unknown_symbol_rejected(self):
        with pytest.raises(SymbolicDomainError):
            SymbolicPolynomial.variable("w")


class TestFunctionField:
    def test_equality_cross_multiplies(self):
        left = (X * X - ONE) / (X - ONE)
        right = X + ONE
        assert left == right

    def test_zero_test_ignores_denominator(self):
        combination = (X + ONE) * (X - ONE) - (X * X - ONE)
        assert (combination / (X ** 3 + from_fraction(7))).is_zero()

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDenominatorError):
            SymbolicFunction(
                SymbolicPolynomial.constant(1), SymbolicPolynomial.constant(0)
            )
        with pytest.raises(ZeroDenominatorError):
            ONE / ZERO

    def test_negative_power_inverts(self):
        assert (X ** -2) * X * X == ONE

    def test_derivative_in_z(self):
        f = (Z * Z) / (Z - ONE)
        expected = (Z * Z - from_fraction(2) * Z) / ((Z - ONE) * (Z - ONE))
        assert f.derivative_z() == expected

    def test_log_derivative_in_x(self):
        assert L.derivative_x() == ONE / X
        assert (L * L).derivative_x() == from_fraction(2) * L / X
        assert (X * L).derivative_x() == L + ONE

    def test_quotient_rule_with_log(self):
        f = L / X
        assert f.derivative_x() == (ONE - L) / (X * X)

    def test_evaluate_with_derived_log(self):
        value = ((A - B) * L).evaluate({"x": mp.e, "a": 2, "b": 1})
        assert mp.almosteq(value, mp.mpf(1), abs_eps=mp.mpf("1e-20"))

    def test_evaluate_fraction_constant(self):
        value = (Z * Z + from_fraction(Fraction(1, 2))).evaluate({"z": 3})
        assert mp.almosteq(value, mp.mpf("9.5"))

    def test_evaluate_needs_x_for_log(self):
        with pytest.raises(SymbolicDomainError):
            L.evaluate({"z": 1})

    def test_evaluate_at_pole_rejected(self):
        with pytest.raises(ZeroDenominatorError):
            (ONE / Z).evaluate({"z": 0})


class TestParsing:
    def test_simple_rational(self):
        assert parse_symbolic("1/z^2") == ONE / (Z * Z)

    def test_parameters_and_log(self):
        assert parse_symbolic("(a-b)*log(x)/z^2") == (A - B) * L / (Z * Z)
        assert parse_symbolic("log(x)^2") == L * L

    def test_undeclared_symbol_rejected(self):
        with pytest.raises(SymbolicDomainError):
            parse_symbolic("q + 1")

    def test_log_of_anything_else_rejected(self):
        with pytest.raises(SymbolicDomainError):
            parse_symbolic("log(z)")
        with pytest.raises(SymbolicDomainError):
            parse_symbolic("log(x^2)")

    def test_text_round_trip(self):
        f = (A - B) * L / (Z * Z)
        assert parse_symbolic(f.text()) == f
