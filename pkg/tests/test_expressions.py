"""Expression grammar: precedence, exact literals, round trips, positions."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from horolab.errors import ExpressionSyntaxError, SymbolicDomainError
from horolab.expressions import (
    BinOp,
    Call,
    Neg,
    Num,
    Pow,
    Var,
    parse_expression,
    parse_rational_function,
    unparse,
)
from horolab.exact import Polynomial, RationalFunction


class TestGrammar:
    def test_precedence_pow_over_neg(self):
        # -z^2 is -(z^2), not (-z)^2
        assert parse_expression("-z^2") == Neg(Pow(Var("z"), 2))

    def test_precedence_mul_over_add(self):
        assert parse_expression("1 + 2*z") == BinOp(
            "+", Num(Fraction(1)), BinOp("*", Num(Fraction(2)), Var("z"))
        )

    def test_left_associative(self):
        assert parse_expression("1 - 2 - 3") == BinOp(
            "-", BinOp("-", Num(Fraction(1)), Num(Fraction(2))), Num(Fraction(3))
        )
        assert parse_expression("8 / 4 / 2") == BinOp(
            "/", BinOp("/", Num(Fraction(8)), Num(Fraction(4))), Num(Fraction(2))
        )

    def test_decimal_literal_exact(self):
        assert parse_expression("0.125") == Num(Fraction(1, 8))

    def test_log_call(self):
        assert parse_expression("log(x)") == Call("log", Var("x"))

    def test_integer_exponent_only(self):
        with pytest.raises(ExpressionSyntaxError):
            parse_expression("z^x")
        with pytest.raises(ExpressionSyntaxError):
            parse_expression("z^1.5")

    def test_error_position(self):
        with pytest.raises(ExpressionSyntaxError) as err:
            parse_expression("1 + * 2")
        assert err.value.position == 4

    def test_trailing_input(self):
        with pytest.raises(ExpressionSyntaxError) as err:
            parse_expression("(z+1) )")
        assert err.value.position == 6

    def test_unknown_function(self):
        with pytest.raises(ExpressionSyntaxError):
            parse_expression("sin(z)")


class TestRoundTrip:
    CASES = [
        "z",
        "-z^2",
        "1 + 2*z - z^3",
        "(1 - z) / (1 + z)",
        "1 - 2 - 3",
        "8 / 4 / 2",
        "2 * (3 + z)",
        "-(z + 1)",
        "log(x) * z",
        "0.25 * z^2",
        "z^-2",
        "1/z^2 + 1/(z - 1)",
    ]

    @pytest.mark.parametrize("text", CASES)
    def test_reparse_equal(self, text):
        ast = parse_expression(text)
        assert parse_expression(unparse(ast)) == ast


def _random_ast(depth):
    leaf = st.one_of(
        st.integers(min_value=0, max_value=9).map(lambda n: Num(Fraction(n))),
        st.sampled_from(["z", "x"]).map(Var),
    )
    if depth == 0:
        return leaf
    sub = _random_ast(depth - 1)
    return st.one_of(
        leaf,
        st.tuples(st.sampled_from("+-*/"), sub, sub).map(lambda t: BinOp(*t)),
        sub.map(Neg),
        st.tuples(sub, st.integers(min_value=0, max_value=4)).map(lambda t: Pow(*t)),
    )


class TestRoundTripProperty:
    @given(_random_ast(3))
    def test_reparse_equal(self, ast):
        assert parse_expression(unparse(ast)) == ast


class TestToRationalFunction:
    def test_basic(self):
        f = parse_rational_function("(12 - 6*z + z^2) / (12 + 6*z + z^2)")
        assert f == RationalFunction(Polynomial((12, -6, 1)), Polynomial((12, 6, 1)))

    def test_parameters_bind(self):
        f = parse_rational_function("a/z", params={"a": Fraction(1, 2)})
        assert f == RationalFunction(Polynomial((Fraction(1, 2),)), Polynomial((0, 1)))

    def test_unbound_identifier(self):
        with pytest.raises(SymbolicDomainError):
            parse_rational_function("w + 1")

    def test_log_rejected(self):
        with pytest.raises(SymbolicDomainError):
            parse_rational_function("log(z)")

    def test_negative_power(self):
        assert parse_rational_function("z^-2") == RationalFunction(1, Polynomial((0, 0, 1)))
