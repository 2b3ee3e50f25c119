"""Certifier: per-prime slopes, growth-order fits, E-section consistency."""

import math
from fractions import Fraction

import pytest

from horolab.errors import NoDataError
from horolab.exact import TruncatedSeries, factorial_valuation
from horolab.lg import (
    VERDICT_CERTIFIED,
    VERDICT_VIOLATED,
    certify_lg,
    check_e_section,
    coefficient_growth_order,
)


def exp_germ(T, power=1):
    """Coefficients 1/(j!)^power."""
    return TruncatedSeries(0, [Fraction(1, math.factorial(j) ** power) for j in range(T + 1)])


def exp_z2_germ(T):
    """e^(z^2): 1/k! at even indices."""
    cs = [Fraction(0)] * (T + 1)
    for k in range(0, T // 2 + 1):
        cs[2 * k] = Fraction(1, math.factorial(k))
    return TruncatedSeries(0, cs)


class TestCertify:
    def test_exponential_type_one(self):
        cert = certify_lg(exp_germ(120), alpha=1)
        assert cert.bad_primes == ()
        assert cert.slope_sum == 0.0
        assert cert.verdict == VERDICT_CERTIFIED

    def test_inverse_square_factorials_refuted_at_one(self):
        sums = []
        for T in (50, 100, 200):
            cert = certify_lg(exp_germ(T, power=2), alpha=1)
            assert cert.bad_primes != ()
            sums.append(cert.slope_sum)
        assert sums[0] < sums[1] < sums[2]

    def test_inverse_square_factorials_certified_at_two(self):
        cert = certify_lg(exp_germ(200, power=2), alpha=2)
        assert cert.bad_primes == ()

    def test_geometric_denominators(self):
        germ = TruncatedSeries(0, [Fraction(1, 2**j) for j in range(40)])
        cert = certify_lg(germ, alpha=1)
        # v_2(a_i) = -i, so the deficiency is the binary digit sum; slope max at i=1
        assert cert.bad_primes == ((2, Fraction(1)),)
        assert cert.slope_sum == pytest.approx(math.log(2))

    def test_strict_mode_violation_index(self):
        germ = TruncatedSeries(0, [Fraction(1, 2**j) for j in range(10)])
        cert = certify_lg(germ, alpha=1, allowed_primes=())
        assert cert.verdict == VERDICT_VIOLATED
        assert cert.violated_at == 1

    def test_strict_mode_allows_listed_primes(self):
        germ = TruncatedSeries(0, [Fraction(1, 2**j) for j in range(10)])
        cert = certify_lg(germ, alpha=1, allowed_primes=(2,))
        assert cert.verdict == VERDICT_CERTIFIED

    def test_empty_rejected(self):
        with pytest.raises(NoDataError):
            certify_lg([], alpha=1)
        with pytest.raises(NoDataError):
            certify_lg(TruncatedSeries(0, [1]), alpha=1)

    def test_product_slopes_subadditive(self):
        # type adds under products; slopes do not exceed the slope sums
        f = TruncatedSeries(0, [Fraction(1, math.factorial(j)) for j in range(60)])
        g = TruncatedSeries(0, [Fraction(1, 3**j * math.factorial(j)) for j in range(60)])
        cf = certify_lg(f, alpha=1)
        cg = certify_lg(g, alpha=1)
        cfg = certify_lg(f * g, alpha=2)
        for p, slope in cfg.bad_primes:
            assert slope <= cf.slope(p) + cg.slope(p)

    def test_multi_component(self):
        cert = certify_lg([exp_germ(80), exp_z2_germ(80)], alpha=1)
        assert cert.component_count == 2
        assert cert.bad_primes == ()


class TestGrowthOrder:
    def test_exponential_is_order_one(self):
        est = coefficient_growth_order(exp_germ(400))
        assert est.rho == pytest.approx(1.0, abs=0.05)

    def test_exp_z2_is_order_two(self):
        est = coefficient_growth_order(exp_z2_germ(400))
        assert est.rho == pytest.approx(2.0, abs=0.1)

    def test_polynomial_tail(self):
        germ = TruncatedSeries(0, [1, 2, 3] + [0] * 97)
        est = coefficient_growth_order(germ)
        assert est.rho == 0.0
        assert "polynomial" in est.note

    def test_short_series_rejected(self):
        with pytest.raises(NoDataError):
            coefficient_growth_order(TruncatedSeries(0, [1] * 20))


class TestESection:
    def test_exponential_consistent(self):
        cert = certify_lg(exp_germ(120), alpha=1)
        growth = coefficient_growth_order(exp_germ(400))
        report = check_e_section(cert, growth, s=1)
        assert report.consistent
        assert report.expected_rho == 1.0

    def test_wrong_type_flagged(self):
        cert = certify_lg(exp_germ(120, power=2), alpha=2)
        growth = coefficient_growth_order(exp_germ(400, power=2))  # order 1/2
        report = check_e_section(cert, growth, s=2)  # would need order 1
        assert not report.consistent

    def test_tolerance_default(self):
        cert = certify_lg(exp_germ(120), alpha=1)
        growth = coefficient_growth_order(exp_germ(400))
        report = check_e_section(cert, growth, s=1)
        assert report.tolerance == 0.1
