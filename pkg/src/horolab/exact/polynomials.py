"""Dense univariate polynomials with exact rational coefficients.

Coefficients are stored ascending by degree with no trailing zeros, so the
zero polynomial has an empty coefficient tuple and ``degree() == -1``.
All arithmetic stays in ``fractions.Fraction``; nothing here ever touches
floating point unless the caller evaluates at a float/complex point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from ..errors import ZeroDenominatorError


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected exact rational, got {type(x).__name__}")


class Polynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # --- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def one(cls) -> "Polynomial":
        return cls((1,))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c=1) -> "Polynomial":
        return cls((0,) * degree + (c,))

    # --- structure ----------------------------------------------------

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Polynomial((other,))
        return NotImplemented

    def __hash__(self):
        return hash(("Polynomial", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    # --- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            [self.coeff(k) + other.coeff(k) for k in range(n)]
        )

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial([c * other for c in self.coeffs])
        if not isinstance(other, Polynomial):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Polynomial(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "Polynomial"):
        """Exact polynomial division with remainder."""
        if other.is_zero():
            raise ZeroDenominatorError("polynomial division by zero")
        num = list(self.coeffs)
        d = other.degree()
        lead = other.leading()
        if len(num) - 1 < d:
            return Polynomial(()), self
        q = [Fraction(0)] * (len(num) - d)
        for k in range(len(num) - 1, d - 1, -1):
            c = num[k] / lead
            if c != 0:
                q[k - d] = c
                for j, b in enumerate(other.coeffs):
                    num[k - d + j] -= c * b
        return Polynomial(q), Polynomial(num[:d])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial((other,))
        return NotImplemented

    # --- calculus and evaluation ---------------------------------------

    def derivative(self) -> "Polynomial":
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, point):
        """Horner evaluation; works for Fraction, float, complex, mpmath."""
        acc = None
        for c in reversed(self.coeffs):
            if acc is None:
                acc = c if not isinstance(point, (float, complex)) else _tofloat(c, point)
                continue
            acc = acc * point + c
        if acc is None:
            return Fraction(0) if not isinstance(point, (float, complex)) else 0 * point
        return acc

    def shift(self, a) -> "Polynomial":
        """Taylor shift: returns q with q(z) = p(z + a)."""
        a = _as_fraction(a)
        if a == 0 or self.is_zero():
            return self
        # synthetic division by (z - a) repeatedly; O(n^2), exact
        cs = list(self.coeffs)
        n = len(cs)
        for i in range(n - 1):
            for k in range(n - 2, i - 1, -1):
                cs[k] = cs[k] + a * cs[k + 1]
        return Polynomial(cs)

    def taylor_coefficients_at(self, a, count: int):
        """First ``count`` Taylor coefficients of p at z=a (exact)."""
        shifted = self.shift(a)
        return [shifted.coeff(k) for k in range(count)]

    # --- gcd machinery --------------------------------------------------

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        lead = self.leading()
        return Polynomial([c / lead for c in self.coeffs])

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def lcm(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero() or other.is_zero():
            return Polynomial(())
        g = self.gcd(other)
        return ((self * other) // g).monic()

    def content_and_primitive(self):
        """Write p = c * q with c rational > 0 and q integer-primitive.

        The sign stays in q, so q's coefficient gcd is 1 and c > 0.
        """
        if self.is_zero():
            return Fraction(1), self
        den_lcm = 1
        for c in self.coeffs:
            den_lcm = den_lcm * c.denominator // int_gcd(den_lcm, c.denominator)
        ints = [int(c * den_lcm) for c in self.coeffs]
        g = 0
        for v in ints:
            g = int_gcd(g, abs(v))
        return Fraction(g, den_lcm), Polynomial([v // g for v in ints])

    def rational_roots(self):
        """All rational roots with multiplicity, via the rational root test."""
        if self.is_zero():
            raise ZeroDenominatorError("zero polynomial has every root")
        _, prim = self.content_and_primitive()
        roots = []
        p = prim
        # strip z^k factor
        k = 0
        while p.coeff(0) == 0 and not p.is_zero():
            p = Polynomial(p.coeffs[1:])
            k += 1
        if k:
            roots.append((Fraction(0), k))
        while p.degree() >= 1:
            a0 = p.coeff(0)
            an = p.leading()
            found = None
            for r in _divisors(abs(a0.numerator * a0.denominator)):
                for s in _divisors(abs(an.numerator * an.denominator)):
                    for cand in (Fraction(r, s), Fraction(-r, s)):
                        if p(cand) == 0:
                            found = cand
                            break
                    if found is not None:
                        break
                if found is not None:
                    break
            if found is None:
                break
            mult = 0
            lin = Polynomial((-found, 1))
            while True:
                q, rem = p.divmod(lin)
                if not rem.is_zero():
                    break
                p = q
                mult += 1
            roots.append((found, mult))
        return roots, p  # p is the root-free (over Q) cofactor

    # --- display --------------------------------------------------------

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"

    def to_str(self, var: str = "z") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mono = var if k == 1 else f"{var}^{k}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def _tofloat(c: Fraction, like):
    if isinstance(like, complex):
        return complex(c)
    return float(c)


def _divisors(n: int):
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)
