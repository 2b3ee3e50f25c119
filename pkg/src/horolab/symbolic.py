"""Sparse exact arithmetic in the ring Q[z, x, a, b, c, log x].

The deformation computations need nothing beyond rational functions in
the coordinates z and x, three free parameters, and powers of log x.
Polynomials are sparse maps from exponent tuples to fractions.
Quotients of polynomials stay unreduced; equality is decided by cross
multiplication, which is exact because the ring is an integral domain
(log x is transcendental over the rational functions in the other
variables, so the symbol L behaves as one more indeterminate).

Differentiation knows the one non-algebraic rule: d/dx sends L to 1/x,
so the x-derivative of a polynomial is in general a quotient with
denominator x.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath as mp

from .errors import SymbolicDomainError, ZeroDenominatorError

VARIABLES = ("z", "x", "a", "b", "c", "L")
_NVARS = len(VARIABLES)
_INDEX = {name: i for i, name in enumerate(VARIABLES)}
_ZERO_EXPONENT = (0,) * _NVARS


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise SymbolicDomainError(
        "scalars must be integers or fractions", received=type(value).__name__
    )


class SymbolicPolynomial:
    """Sparse polynomial over Q in the variables z, x, a, b, c, L."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for exponents, coefficient in terms.items():
                if coefficient:
                    cleaned[tuple(exponents)] = coefficient
        self.terms = cleaned

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, value) -> "SymbolicPolynomial":
        value = _as_fraction(value)
        return cls({_ZERO_EXPONENT: value} if value else {})

    @classmethod
    def variable(cls, name: str) -> "SymbolicPolynomial":
        if name not in _INDEX:
            raise SymbolicDomainError(
                "unknown symbol", symbol=name, known=list(VARIABLES)
            )
        exponents = [0] * _NVARS
        exponents[_INDEX[name]] = 1
        return cls({tuple(exponents): Fraction(1)})

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(e == _ZERO_EXPONENT for e in self.terms)

    def uses(self, name: str) -> bool:
        index = _INDEX[name]
        return any(exponents[index] for exponents in self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolicPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- ring operations ------------------------------------------------------

    def __add__(self, other: "SymbolicPolynomial") -> "SymbolicPolynomial":
        merged = dict(self.terms)
        for exponents, coefficient in other.terms.items():
            merged[exponents] = merged.get(exponents, Fraction(0)) + coefficient
        return SymbolicPolynomial(merged)

    def __neg__(self) -> "SymbolicPolynomial":
        return SymbolicPolynomial(
            {e: -c for e, c in self.terms.items()}
        )

    def __sub__(self, other: "SymbolicPolynomial") -> "SymbolicPolynomial":
        return self + (-other)

    def __mul__(self, other: "SymbolicPolynomial") -> "SymbolicPolynomial":
        product: dict = {}
        for left_exp, left_coeff in self.terms.items():
            for right_exp, right_coeff in other.terms.items():
                key = tuple(l + r for l, r in zip(left_exp, right_exp))
                product[key] = product.get(key, Fraction(0)) + left_coeff * right_coeff
        return SymbolicPolynomial(product)

    def scaled(self, value) -> "SymbolicPolynomial":
        value = _as_fraction(value)
        return SymbolicPolynomial({e: value * c for e, c in self.terms.items()})

    def __pow__(self, exponent: int) -> "SymbolicPolynomial":
        if exponent < 0:
            raise SymbolicDomainError("polynomial powers must be non-negative")
        result = SymbolicPolynomial.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- calculus -------------------------------------------------------------

    def partial(self, name: str) -> "SymbolicPolynomial":
        """Formal partial derivative treating every symbol as independent."""
        index = _INDEX[name]
        derived: dict = {}
        for exponents, coefficient in self.terms.items():
            power = exponents[index]
            if not power:
                continue
            lowered = list(exponents)
            lowered[index] = power - 1
            key = tuple(lowered)
            derived[key] = derived.get(key, Fraction(0)) + coefficient * power
        return SymbolicPolynomial(derived)

    # -- structure ------------------------------------------------------------

    def coefficients_in(self, name: str) -> dict:
        """Group terms by the power of one variable.

        Returns a map from exponent to the polynomial coefficient in the
        remaining variables (the chosen variable's slot is zeroed out).
        """
        index = _INDEX[name]
        grouped: dict = {}
        for exponents, coefficient in self.terms.items():
            power = exponents[index]
            flattened = list(exponents)
            flattened[index] = 0
            bucket = grouped.setdefault(power, {})
            key = tuple(flattened)
            bucket[key] = bucket.get(key, Fraction(0)) + coefficient
        return {
            power: SymbolicPolynomial(bucket) for power, bucket in grouped.items()
        }

    def evaluate(self, assignments: dict):
        """Evaluate with mpmath numbers; L is derived as log of x."""
        values = _resolved_assignments(assignments, needs_log=self.uses("L"))
        total = mp.mpf(0)
        for exponents, coefficient in self.terms.items():
            term = mp.mpf(coefficient.numerator) / coefficient.denominator
            for name, power in zip(VARIABLES, exponents):
                if power:
                    term = term * values[name] ** power
            total = total + term
        return total

    # -- rendering --------------------------------------------------------------

    def text(self) -> str:
        if not self.terms:
            return "0"
        rendered = []
        for exponents, coefficient in sorted(self.terms.items(), reverse=True):
            factors = []
            for name, power in zip(VARIABLES, exponents):
                symbol = "log(x)" if name == "L" else name
                if power == 1:
                    factors.append(symbol)
                elif power > 1:
                    factors.append(f"{symbol}^{power}")
            if not factors:
                factors.append(str(coefficient))
            elif coefficient == -1:
                factors.insert(0, "-1")
            elif coefficient != 1:
                factors.insert(0, str(coefficient))
            rendered.append("*".join(factors))
        return " + ".join(rendered).replace("+ -", "- ")

    def __repr__(self):
        return f"SymbolicPolynomial({self.text()})"


def _resolved_assignments(assignments: dict, needs_log: bool) -> dict:
    values = {}
    for name in VARIABLES:
        if name in assignments:
            values[name] = mp.mpmathify(assignments[name])
    if needs_log and "L" not in values:
        if "x" not in values:
            raise SymbolicDomainError("evaluating log x needs a value for x")
        values["L"] = mp.log(values["x"])
    return values


_ONE = SymbolicPolynomial.constant(1)


class SymbolicFunction:
    """Unreduced quotient of two sparse polynomials.

    Arithmetic never cancels common factors; the zero test looks only at
    the numerator and equality cross multiplies, so every answer is
    exact.  The sizes arising from rank-2 deformation checks stay small
    enough that reduction would buy nothing.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: SymbolicPolynomial, den: SymbolicPolynomial = _ONE):
        if den.is_zero():
            raise ZeroDenominatorError("denominator is identically zero")
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, value) -> "SymbolicFunction":
        value = _as_fraction(value)
        return cls(SymbolicPolynomial.constant(value))

    @classmethod
    def variable(cls, name: str) -> "SymbolicFunction":
        return cls(SymbolicPolynomial.variable(name))

    # -- predicates ------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolicFunction):
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    def __hash__(self):
        raise TypeError("unreduced quotients are not hashable")

    def uses(self, name: str) -> bool:
        return self.num.uses(name) or self.den.uses(name)

    # -- field operations ---------------------------------------------------------

    def __add__(self, other: "SymbolicFunction") -> "SymbolicFunction":
        return SymbolicFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "SymbolicFunction":
        return SymbolicFunction(-self.num, self.den)

    def __sub__(self, other: "SymbolicFunction") -> "SymbolicFunction":
        return self + (-other)

    def __mul__(self, other: "SymbolicFunction") -> "SymbolicFunction":
        return SymbolicFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "SymbolicFunction") -> "SymbolicFunction":
        if other.is_zero():
            raise ZeroDenominatorError("division by the zero function")
        return SymbolicFunction(self.num * other.den, self.den * other.num)

    def __pow__(self, exponent: int) -> "SymbolicFunction":
        if exponent < 0:
            return SymbolicFunction(self.den, self.num) ** (-exponent)
        return SymbolicFunction(self.num**exponent, self.den**exponent)

    # -- calculus --------------------------------------------------------------------

    def derivative_z(self) -> "SymbolicFunction":
        """Partial derivative in z (no symbol depends on z)."""
        return SymbolicFunction(
            self.num.partial("z") * self.den - self.num * self.den.partial("z"),
            self.den * self.den,
        )

    def derivative_x(self) -> "SymbolicFunction":
        """Total derivative in x, using dL/dx = 1/x."""
        return SymbolicFunction(
            _total_x(self.num) * self.den - self.num * _total_x(self.den),
            SymbolicPolynomial.variable("x") * self.den * self.den,
        )

    def evaluate(self, assignments: dict):
        """Numeric value via mpmath; raises on a vanishing denominator."""
        denominator = self.den.evaluate(assignments)
        if denominator == 0:
            raise ZeroDenominatorError(
                "denominator vanishes at the evaluation point"
            )
        return self.num.evaluate(assignments) / denominator

    # -- rendering -----------------------------------------------------------------------

    def text(self) -> str:
        if self.den == _ONE:
            return self.num.text()
        return f"({self.num.text()}) / ({self.den.text()})"

    def __repr__(self):
        return f"SymbolicFunction({self.text()})"


def _total_x(poly: SymbolicPolynomial) -> SymbolicPolynomial:
    """x times the total x-derivative of a polynomial (clears the 1/x)."""
    return SymbolicPolynomial.variable("x") * poly.partial("x") + poly.partial("L")


ZERO = SymbolicFunction.constant(0)
ONE = SymbolicFunction.constant(1)


def symbol(name: str) -> SymbolicFunction:
    """The coordinate or parameter with the given name, as a function."""
    return SymbolicFunction.variable(name)


def from_fraction(value) -> SymbolicFunction:
    """Embed an integer or fraction as a constant function."""
    return SymbolicFunction.constant(value)


def from_expression(node, parameters=("a", "b", "c")) -> SymbolicFunction:
    """Interpret a parsed expression tree in the symbolic ring.

    Variables z and x are coordinates; names listed in parameters are
    free symbols; log is only defined on the bare variable x, because
    the ring tracks no other transcendental.
    """
    from . import expressions as ex

    allowed = {"z", "x"} | set(parameters)

    def build(item) -> SymbolicFunction:
        if isinstance(item, ex.Num):
            return SymbolicFunction(
                SymbolicPolynomial.constant(Fraction(item.value))
            )
        if isinstance(item, ex.Var):
            if item.name not in allowed:
                raise SymbolicDomainError(
                    "symbol not declared", symbol=item.name, declared=sorted(allowed)
                )
            return SymbolicFunction.variable(item.name)
        if isinstance(item, ex.Call):
            if item.func != "log" or not (
                isinstance(item.arg, ex.Var) and item.arg.name == "x"
            ):
                raise SymbolicDomainError(
                    "only log(x) is available in the symbolic ring"
                )
            return SymbolicFunction.variable("L")
        if isinstance(item, ex.Neg):
            return -build(item.operand)
        if isinstance(item, ex.Pow):
            return build(item.base) ** item.exponent
        if isinstance(item, ex.BinOp):
            left, right = build(item.left), build(item.right)
            if item.op == "+":
                return left + right
            if item.op == "-":
                return left - right
            if item.op == "*":
                return left * right
            return left / right
        raise SymbolicDomainError(
            "unsupported expression node", node=type(item).__name__
        )

    return build(node)


def parse_symbolic(text: str, parameters=("a", "b", "c")) -> SymbolicFunction:
    """Parse an expression string straight into the symbolic ring."""
    from . import expressions as ex

    return from_expression(ex.parse_expression(text), parameters=parameters)
