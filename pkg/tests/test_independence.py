"""Integer-relation search: pinned relations, dimension witnesses, Cramer bound."""

import math
from fractions import Fraction

import pytest
from mpmath import mp

from horolab.errors import (
    IncompleteHypothesesError,
    InconclusiveSearchError,
    InputFormatError,
)
from horolab.independence import (
    RelationQuery,
    cramer_bound_report,
    integer_relation_search,
    measured_constants,
    monomial_exponents,
    ratio_witness_profile,
    relation_string,
    subspace_dimension_estimate,
)

E = lambda: mp.e
E2 = lambda: mp.e**2
PI = lambda: mp.pi
SQRT2 = lambda: mp.sqrt(2)
SQRT3 = lambda: mp.sqrt(3)


class TestEnumeration:
    def test_counts(self):
        assert len(monomial_exponents(1, 2)) == 3
        assert len(monomial_exponents(2, 2)) == 6
        assert len(monomial_exponents(3, 2)) == 10

    def test_order(self):
        assert monomial_exponents(2, 2) == [
            (0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)
        ]


class TestSearch:
    def test_sqrt2_minimal_polynomial(self):
        report = integer_relation_search(
            RelationQuery(values=(SQRT2,), degree=2, height_bound=10, precision=80)
        )
        assert report.found == (-2, 0, 1)
        assert report.pretty == "x^2 - 2"
        assert report.residual < 1e-40

    def test_e_e_squared(self):
        report = integer_relation_search(
            RelationQuery(values=(E, E2), degree=2, height_bound=100, precision=200)
        )
        assert report.found == (0, 0, -1, 1, 0, 0)
        assert report.pretty == "y1^2 - y2"
        assert report.residual < 1e-100

    def test_e_pi_none_found(self):
        report = integer_relation_search(
            RelationQuery(values=(E, PI), degree=2, height_bound=10**6, precision=200)
        )
        assert report.verdict == "none-found"
        assert report.found is None
        assert "not an independence claim" in report.to_json()["caveat"]

    def test_precision_margin_enforced(self):
        with pytest.raises(InconclusiveSearchError):
            RelationQuery(values=(E, PI), degree=2, height_bound=10**6, precision=40)

    def test_decimal_string_input(self):
        with mp.workdps(120):
            text = mp.nstr(mp.sqrt(2), 110, strip_zeros=False)
        report = integer_relation_search(
            RelationQuery(values=(text,), degree=2, height_bound=10, precision=50)
        )
        assert report.found == (-2, 0, 1)

    def test_empty_values_rejected(self):
        with pytest.raises(InputFormatError):
            RelationQuery(values=(), degree=2, height_bound=10)


class TestSubspaceEstimate:
    def test_e_e_squared_one_relation(self):
        estimate = subspace_dimension_estimate((E, E2), 2, 100, precision=200)
        assert estimate.dim_e == 6
        assert len(estimate.relations) == 1
        assert estimate.witness_dimension == 5
        assert (0, 0, -1, 1, 0, 0) in estimate.relations

    def test_two_quadratic_irrationals(self):
        estimate = subspace_dimension_estimate((SQRT2, SQRT3), 2, 100, precision=200)
        assert estimate.dim_e == 6
        assert len(estimate.relations) == 2
        assert estimate.witness_dimension == 4

    def test_all_ones(self):
        estimate = subspace_dimension_estimate((lambda: mp.mpf(1),), 3, 10, precision=80)
        assert estimate.dim_e == 4
        assert estimate.witness_dimension == 1

    def test_ratio_profile_stays_one_without_relations(self):
        profile = ratio_witness_profile((E, PI), 2, 1000, precision=200)
        assert [row[3] for row in profile] == [Fraction(1), Fraction(1)]

    def test_caveat_present(self):
        estimate = subspace_dimension_estimate((E, E2), 2, 100, precision=200)
        assert "height bound" in estimate.to_json()["caveat"]


class TestRelationString:
    def test_integer_coefficients(self):
        expos = monomial_exponents(2, 2)
        assert relation_string((3, 0, -2, 0, 0, 1), expos, 2) == "y2^2 - 2*y2 + 3"

    def test_single_variable(self):
        expos = monomial_exponents(1, 3)
        assert relation_string((-1, 0, 0, 1), expos, 1) == "x^3 - 1"


class TestCramerBound:
    def test_direct_substitution(self):
        report = cramer_bound_report(5, c1=1, c2=1, c3=0)
        assert report.r1_lower_bound == 5
        assert not report.vacuous

    def test_vacuous(self):
        report = cramer_bound_report(3, c1=2, c2=0, c3=1)
        assert report.r1_lower_bound == Fraction(-1, 2)
        assert report.vacuous

    def test_missing_hypotheses(self):
        with pytest.raises(IncompleteHypothesesError):
            cramer_bound_report(5, c1=1, c2=None, c3=0)

    def test_measured_family_positive(self):
        from horolab.auxiliary import VanishingProblem, height_profile
        from horolab.connection import diagonal_system
        from horolab.exact import TruncatedSeries
        from horolab.zerolemma import zero_lemma_check
        from horolab.auxiliary import construct_small_section

        def germ(T):
            one = TruncatedSeries(0, [1] + [0] * T)
            ez = TruncatedSeries(
                0, [Fraction(1, math.factorial(k)) for k in range(T + 1)]
            )
            return (one, ez)

        def problem(x):
            return VanishingProblem(
                [(0, germ(3 * x + 9))], degree=x, order=2 * x + 1
            )

        degrees = range(2, 8)
        profile = height_profile(problem, degrees)
        system = diagonal_system(0, 1)
        reports = [
            zero_lemma_check(
                construct_small_section(problem(x)).section, system, germ(3 * x + 9)
            )
            for x in degrees
        ]
        c1, c2, c3 = measured_constants(profile, reports)
        report = cramer_bound_report(2, c1=c1, c2=c2, c3=c3)
        assert not report.vacuous
        assert 0 < report.r1_lower_bound <= 2
