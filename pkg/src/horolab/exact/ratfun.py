"""Rational functions over Q with reduced numerator and monic denominator."""

from __future__ import annotations

from fractions import Fraction

from ..errors import ExpansionAtPoleError, ZeroDenominatorError
from .polynomials import Polynomial


def _as_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial((x,))
    if isinstance(x, (list, tuple)):
        return Polynomial(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Polynomial")


class RationalFunction:
    """num/den with gcd(num, den) = 1 and den monic.

    The normal form makes equality structural, which the rest of the
    laboratory relies on (pole bookkeeping, exact zero tests).
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise ZeroDenominatorError("rational function with zero denominator")
        if num.is_zero():
            self.num = Polynomial(())
            self.den = Polynomial.one()
            return
        g = num.gcd(den)
        if g.degree() > 0:
            num = num // g
            den = den // g
        lead = den.leading()
        if lead != 1:
            num = num * (1 / lead)
            den = den.monic()
        self.num = num
        self.den = den

    # --- constructors ---------------------------------------------------

    @classmethod
    def from_polynomial(cls, p) -> "RationalFunction":
        return cls(p, 1)

    @classmethod
    def zero(cls) -> "RationalFunction":
        return cls(0, 1)

    @classmethod
    def one(cls) -> "RationalFunction":
        return cls(1, 1)

    @classmethod
    def z(cls) -> "RationalFunction":
        return cls(Polynomial.x(), 1)

    # --- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree() == 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            other = RationalFunction(other, 1)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("RationalFunction", self.num.coeffs, self.den.coeffs))

    def __bool__(self):
        return not self.is_zero()

    # --- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction, Polynomial)):
            return RationalFunction(other, 1)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        out = RationalFunction.__new__(RationalFunction)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDenominatorError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RationalFunction(other, 1) / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalFunction(self.den, self.num) ** (-n)
        return RationalFunction(self.num**n, self.den**n)

    # --- calculus ---------------------------------------------------------

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __call__(self, point):
        dv = self.den(point)
        if dv == 0:
            raise ExpansionAtPoleError(
                "evaluation at a pole", point=str(point)
            )
        return self.num(point) / dv

    def has_pole_at(self, point) -> bool:
        return self.den(point) == 0

    # --- local expansion ----------------------------------------------------

    def taylor_coefficients_at(self, a, count: int):
        """Exact Taylor coefficients at z=a up to (z-a)^(count-1).

        Raises expansion-at-pole when den(a) = 0.
        """
        if count <= 0:
            return []
        den_s = self.den.shift(a)
        if den_s.coeff(0) == 0:
            raise ExpansionAtPoleError(
                "Taylor expansion requested at a pole", point=str(a)
            )
        num_s = self.num.shift(a)
        d0 = den_s.coeff(0)
        out = []
        for k in range(count):
            acc = num_s.coeff(k)
            for j in range(1, k + 1):
                dj = den_s.coeff(j)
                if dj != 0:
                    acc -= dj * out[k - j]
            out.append(acc / d0)
        return out

    # --- display ---------------------------------------------------------

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def to_str(self, var: str = "z") -> str:
        if self.is_polynomial():
            return self.num.to_str(var)
        return f"({self.num.to_str(var)}) / ({self.den.to_str(var)})"
