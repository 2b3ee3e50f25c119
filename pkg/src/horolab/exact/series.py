"""Truncated power series with exact rational coefficients.

A series knows its base point and carries exactly ``truncation_order + 1``
coefficients in the local coordinate (z - base).  Trailing zeros are kept:
truncation order is part of the data, not an artifact of storage.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import InsufficientTruncationError, PairingMismatchError
from .polynomials import Polynomial, _as_fraction


class TruncatedSeries:
    __slots__ = ("base", "coeffs")

    def __init__(self, base, coeffs):
        self.base = _as_fraction(base)
        self.coeffs = tuple(_as_fraction(c) for c in coeffs)
        if not self.coeffs:
            raise InsufficientTruncationError("series needs at least one coefficient")

    @property
    def truncation_order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, base, truncation_order: int) -> "TruncatedSeries":
        return cls(base, [0] * (truncation_order + 1))

    @classmethod
    def from_polynomial(cls, p: Polynomial, base, truncation_order: int) -> "TruncatedSeries":
        return cls(base, p.taylor_coefficients_at(base, truncation_order + 1))

    # --- structure ------------------------------------------------------

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        raise InsufficientTruncationError(
            f"coefficient {k} beyond truncation order {self.truncation_order}"
        )

    def order(self):
        """Index of the first non-zero coefficient; None when saturated."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return None

    def is_zero_to_truncation(self) -> bool:
        return self.order() is None

    def truncate(self, truncation_order: int) -> "TruncatedSeries":
        if truncation_order > self.truncation_order:
            raise InsufficientTruncationError(
                f"cannot extend truncation {self.truncation_order} to {truncation_order}"
            )
        return TruncatedSeries(self.base, self.coeffs[: truncation_order + 1])

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.base == other.base and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("TruncatedSeries", self.base, self.coeffs))

    # --- arithmetic (common base point; result at min truncation) --------

    def _check_base(self, other):
        if self.base != other.base:
            raise PairingMismatchError(
                "series arithmetic across different base points",
                left=str(self.base),
                right=str(other.base),
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            cs = list(self.coeffs)
            cs[0] += other
            return TruncatedSeries(self.base, cs)
        self._check_base(other)
        n = min(len(self.coeffs), len(other.coeffs))
        return TruncatedSeries(
            self.base, [self.coeffs[k] + other.coeffs[k] for k in range(n)]
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.base, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries(self.base, [c * other for c in self.coeffs])
        self._check_base(other)
        n = min(len(self.coeffs), len(other.coeffs))
        out = [Fraction(0)] * n
        for i in range(n):
            a = self.coeffs[i]
            if a == 0:
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return TruncatedSeries(self.base, out)

    __rmul__ = __mul__

    def derivative(self) -> "TruncatedSeries":
        """d/dz in the local coordinate; truncation drops by one."""
        if self.truncation_order == 0:
            raise InsufficientTruncationError("cannot differentiate order-0 series")
        return TruncatedSeries(
            self.base, [k * self.coeffs[k] for k in range(1, len(self.coeffs))]
        )

    def multiply_polynomial(self, p: Polynomial) -> "TruncatedSeries":
        """Product with a polynomial, truncated to this series' order."""
        ps = p.taylor_coefficients_at(self.base, len(self.coeffs))
        n = len(self.coeffs)
        out = [Fraction(0)] * n
        for i, a in enumerate(ps):
            if a == 0:
                continue
            for j in range(n - i):
                b = self.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return TruncatedSeries(self.base, out)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if len(self.coeffs) > 6 else ""
        return f"TruncatedSeries(base={self.base}, [{head}{tail}], T={self.truncation_order})"
