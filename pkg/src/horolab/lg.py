"""Arithmetic-growth certification of series germs.

A germ vector f = (f_1, ..., f_m) with rational coefficients a_i(j) is
certified at type alpha, to the truncation order T, by measuring for every
prime p dividing some coefficient denominator the minimal slope

    c_p = max(0, max_{1 <= i <= T, j} (-v_p(a_i(j)) - alpha * v_p(i!)) / i).

Primes with c_p > 0 are the bad primes; a germ of type alpha in the strict
sense has finitely many of them with finite sum of c_p log p.  On truncated
data the honest verdict is always "certified-to-order-T" with the measured
slopes; refutation shows up as slopes that keep growing when T does.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NoDataError
from .exact import TruncatedSeries, factorial_valuation, int_valuation, primes_up_to
from .exact.valuations import is_prime

VERDICT_CERTIFIED = "certified-to-order-T"
VERDICT_VIOLATED = "violated-at-index"


@dataclass(frozen=True)
class LgCertificate:
    alpha: Fraction
    truncation_order: int
    component_count: int
    bad_primes: tuple  # ((prime, slope Fraction), ...) sorted by prime
    slope_sum: float  # sum of c_p log p over bad primes
    verdict: str = VERDICT_CERTIFIED
    violated_at: int | None = None

    def slope(self, p: int) -> Fraction:
        for q, c in self.bad_primes:
            if q == p:
                return c
        return Fraction(0)

    def to_json(self):
        return {
            "alpha": str(self.alpha),
            "truncation_order": self.truncation_order,
            "component_count": self.component_count,
            "bad_primes": [
                {"prime": p, "slope": str(c), "slope_float": float(c)}
                for p, c in self.bad_primes
            ],
            "slope_sum": self.slope_sum,
            "verdict": self.verdict,
            "violated_at": self.violated_at,
        }


def _germ_components(germs):
    if isinstance(germs, TruncatedSeries):
        return [germs]
    comps = list(germs)
    if not comps:
        raise NoDataError("empty germ list")
    return comps


def _denominator_prime_support(components):
    """Primes dividing any coefficient denominator, by shared trial division."""
    support = []
    sieve = None
    for comp in components:
        for c in comp.coeffs:
            d = c.denominator
            if d == 1:
                continue
            for p in support:
                while d % p == 0:
                    d //= p
            if d == 1:
                continue
            if sieve is None:
                sieve = primes_up_to(1 << 16)
            for p in sieve:
                if p * p > d:
                    break
                if d % p == 0:
                    support.append(p)
                    while d % p == 0:
                        d //= p
            if d > 1:
                if is_prime(d):
                    support.append(d)
                else:
                    raise NoDataError(
                        "coefficient denominator too rough to factor",
                        digits=len(str(d)),
                    )
            support.sort()
    return support


def certify_lg(germs, alpha, allowed_primes=None) -> LgCertificate:
    """Measure per-prime slopes of a germ vector at type alpha.

    ``allowed_primes`` switches on strict mode: any deficiency at a prime
    outside the allowed set flips the verdict to violated-at-index, with
    the first offending coefficient index recorded.
    """
    alpha = Fraction(alpha)
    comps = _germ_components(germs)
    T = min(c.truncation_order for c in comps)
    if T < 1:
        raise NoDataError("certification needs at least one coefficient beyond order 0")
    support = _denominator_prime_support(comps)

    bad = []
    violated_at = None
    for p in support:
        fact_val = [factorial_valuation(i, p) for i in range(T + 1)]
        best = Fraction(0)
        first_bad_index = None
        for comp in comps:
            for i in range(1, T + 1):
                c = comp.coeffs[i]
                if c == 0:
                    continue
                v = int_valuation(c.numerator, p) - int_valuation(c.denominator, p)
                deficiency = Fraction(-v) - alpha * fact_val[i]
                if deficiency > 0:
                    slope = deficiency / i
                    if slope > best:
                        best = slope
                    if first_bad_index is None or i < first_bad_index:
                        first_bad_index = i
        if best > 0:
            bad.append((p, best))
            if allowed_primes is not None and p not in set(allowed_primes):
                if violated_at is None or first_bad_index < violated_at:
                    violated_at = first_bad_index

    bad.sort()
    slope_sum = sum(float(c) * math.log(p) for p, c in bad)
    verdict = VERDICT_CERTIFIED if violated_at is None else VERDICT_VIOLATED
    return LgCertificate(
        alpha=alpha,
        truncation_order=T,
        component_count=len(comps),
        bad_primes=tuple(bad),
        slope_sum=slope_sum,
        verdict=verdict,
        violated_at=violated_at,
    )


# --- archimedean growth from coefficients ----------------------------------


@dataclass(frozen=True)
class GrowthEstimate:
    rho: float
    residual: float
    method: str
    sample_count: int
    note: str = ""

    def to_json(self):
        return {
            "rho": self.rho,
            "residual": self.residual,
            "method": self.method,
            "sample_count": self.sample_count,
            "note": self.note,
        }


def coefficient_growth_order(germ: TruncatedSeries, min_index: int = 8) -> GrowthEstimate:
    """Growth order from coefficient decay.

    For an entire function of order rho the coefficients obey
    -log|a_n| ~ (n log n)/rho + O(n), so a least-squares fit of
    -log|a_n| against the regressors (n log n, n) over the non-zero tail
    recovers rho as the reciprocal of the leading coefficient.
    """
    T = germ.truncation_order
    if T < 50:
        raise NoDataError("growth fit needs truncation order at least 50", T=T)
    xs, ys = [], []
    for n in range(max(min_index, 2), T + 1):
        c = germ.coeffs[n]
        if c == 0:
            continue
        ln = math.log(abs(c.numerator)) - math.log(c.denominator)
        xs.append(n)
        ys.append(-ln)
    half = [n for n in xs if n >= T // 2]
    if not half:
        return GrowthEstimate(
            rho=0.0, residual=0.0, method="coefficient-order", sample_count=len(xs),
            note="polynomial-input: zero tail",
        )
    if len(xs) < 8:
        raise NoDataError("too few non-zero coefficients for a fit", count=len(xs))
    n_arr = np.array(xs, dtype=float)
    y_arr = np.array(ys, dtype=float)
    design = np.column_stack([n_arr * np.log(n_arr), n_arr])
    beta, *_ = np.linalg.lstsq(design, y_arr, rcond=None)
    fitted = design @ beta
    scale = max(1.0, float(np.mean(np.abs(y_arr))))
    residual = float(np.sqrt(np.mean((fitted - y_arr) ** 2))) / scale
    if beta[0] <= 1e-12:
        return GrowthEstimate(
            rho=math.inf, residual=residual, method="coefficient-order",
            sample_count=len(xs), note="coefficients decay slower than any positive order",
        )
    return GrowthEstimate(
        rho=1.0 / float(beta[0]),
        residual=residual,
        method="coefficient-order",
        sample_count=len(xs),
    )


@dataclass(frozen=True)
class ESectionReport:
    consistent: bool
    measured_rho: float
    expected_rho: float
    tolerance: float
    alpha: Fraction
    s: int

    def to_json(self):
        return {
            "consistent": self.consistent,
            "measured_rho": self.measured_rho,
            "expected_rho": self.expected_rho,
            "tolerance": self.tolerance,
            "alpha": str(self.alpha),
            "s": self.s,
        }


def check_e_section(
    certificate: LgCertificate,
    growth: GrowthEstimate,
    s: int,
    tolerance: float = 0.1,
) -> ESectionReport:
    """Consistency of arithmetic type alpha with analytic order rho = s/alpha."""
    expected = float(s) / float(certificate.alpha)
    measured = growth.rho
    ok = math.isfinite(measured) and abs(measured - expected) <= tolerance
    return ESectionReport(
        consistent=ok,
        measured_rho=measured,
        expected_rho=expected,
        tolerance=tolerance,
        alpha=certificate.alpha,
        s=s,
    )
