"""Tower rank, vanishing orders, measured zero-lemma constant, wedge search."""

import math
from fractions import Fraction

import pytest

from horolab.auxiliary import VanishingProblem, construct_small_section
from horolab.connection import (
    DifferentialSystem,
    PolySection,
    diagonal_system,
    local_solution_basis,
    pair,
)
from horolab.errors import (
    BoundTooSmallError,
    InputFormatError,
    InsufficientTruncationError,
    SingularPointError,
)
from horolab.exact import Polynomial, TruncatedSeries
from horolab.zerolemma import (
    analyze_tower,
    cramer_identity_holds,
    nonvanishing_wedge_indices,
    polynomial_determinant,
    polynomial_matrix_rank,
    vanishing_order,
    zero_lemma_check,
    zero_lemma_family_csv_rows,
)


def exp_pair_germ(T):
    one = TruncatedSeries(0, [1] + [0] * T)
    ez = TruncatedSeries(0, [Fraction(1, math.factorial(k)) for k in range(T + 1)])
    return (one, ez)


EXP_SYSTEM = diagonal_system(0, 1)


def pade_section(x):
    T = 3 * x + 9
    problem = VanishingProblem(
        [(0, exp_pair_germ(T))], degree=x, order=2 * x + 1
    )
    return construct_small_section(problem).section, exp_pair_germ(T)


class TestRank:
    def test_rank_over_qz(self):
        z = Polynomial.x()
        rows = [[z, z * z], [Polynomial.one(), z]]
        # second row is the first divided by z: rank 1 over Q(z)
        assert polynomial_matrix_rank(rows) == 1
        rows[1][1] = z + 1
        assert polynomial_matrix_rank(rows) == 2

    def test_determinant(self):
        z = Polynomial.x()
        det = polynomial_determinant([[z, Polynomial.one()], [Polynomial.one(), z]])
        assert det == z * z - 1


class TestAnalyzeTower:
    def test_diag_1_2_full_rank(self):
        analysis = analyze_tower(PolySection([1, 1]), diagonal_system(1, 2))
        assert analysis.rank == 2
        assert analysis.wronskian == Polynomial.one()
        assert len(analysis.tower) == 3
        assert len(analysis.minimal_submodule_basis) == 2

    def test_constant_system_rank_one(self):
        analysis = analyze_tower(PolySection([1, 0]), diagonal_system(0, 0))
        assert analysis.rank == 1

    def test_degenerate_direction_rank_one(self):
        # P is an eigenvector direction of diag(1,1): the tower never leaves it
        analysis = analyze_tower(PolySection([1, 1]), diagonal_system(1, 1))
        assert analysis.rank == 1

    def test_zero_section_rejected(self):
        with pytest.raises(InputFormatError):
            analyze_tower(PolySection([0, 0]), diagonal_system(1, 2))

    def test_truncation_precondition(self):
        with pytest.raises(InsufficientTruncationError):
            analyze_tower(
                PolySection([Polynomial((0, 0, 0, 1)), 1]),
                EXP_SYSTEM,
                germs=exp_pair_germ(4),
            )

    def test_pairing_orders_recorded(self):
        section, germs = pade_section(2)
        analysis = analyze_tower(section, EXP_SYSTEM, germs=germs)
        assert analysis.pairing_orders[0] == 5
        assert analysis.ord_drop_holds is True


class TestVanishingOrder:
    def test_pade_remainder(self):
        section, germs = pade_section(2)
        assert vanishing_order(pair(section, germs)) == 5

    def test_saturated(self):
        assert vanishing_order(TruncatedSeries.zero(0, 6)) is None

    def test_unit(self):
        assert vanishing_order(TruncatedSeries(0, [1, 1])) == 0


class TestZeroLemma:
    def test_pade_x2(self):
        section, germs = pade_section(2)
        report = zero_lemma_check(section, EXP_SYSTEM, germs)
        assert (report.x, report.rank, report.ord_q) == (2, 2, 5)
        assert report.measured_c == 1
        assert report.ord_drop_holds

    def test_nonvanishing_pairing(self):
        T = 12
        report = zero_lemma_check(
            PolySection([1, 0]), EXP_SYSTEM, exp_pair_germ(T), x=2
        )
        assert report.ord_q == 0
        assert report.measured_c == -2 * report.rank

    def test_family_constant(self):
        reports = []
        for x in range(2, 9):
            section, germs = pade_section(x)
            reports.append(zero_lemma_check(section, EXP_SYSTEM, germs))
        assert all(r.measured_c == 1 for r in reports)
        assert all(r.ord_drop_holds for r in reports)
        rows = list(zero_lemma_family_csv_rows(reports))
        assert rows[0] == ("x", "ord", "rank", "measured_C")
        assert rows[1] == (2, 5, 2, 1)

    def test_saturated_pairing_rejected(self):
        T = 12
        one = TruncatedSeries(0, [1] + [0] * T)
        null = TruncatedSeries.zero(0, T)
        with pytest.raises(InsufficientTruncationError):
            zero_lemma_check(PolySection([0, 1]), EXP_SYSTEM, (one, null), x=1)


class TestCramer:
    def test_exp_pair(self):
        section, germs = pade_section(2)
        analysis = analyze_tower(section, EXP_SYSTEM, germs=germs)
        assert cramer_identity_holds(analysis, germs)

    def test_cyclic_three(self):
        system = DifferentialSystem([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
        basis = local_solution_basis(system, 0, 18)
        germs = tuple(
            basis[0][i] + basis[1][i] - basis[2][i] for i in range(3)
        )
        section = PolySection([Polynomial((1, 1)), Polynomial((0, 2)), 1])
        analysis = analyze_tower(section, system, germs=germs)
        assert analysis.rank == 3
        assert cramer_identity_holds(analysis, germs)

    def test_rank_deficient_rejected(self):
        analysis = analyze_tower(PolySection([1, 1]), diagonal_system(1, 1))
        T = 12
        one = TruncatedSeries(0, [1] + [0] * T)
        with pytest.raises(InputFormatError):
            cramer_identity_holds(analysis, (one, one))


class TestWedge:
    def test_diag_1_2(self):
        witness = nonvanishing_wedge_indices(
            PolySection([1, 1]), diagonal_system(1, 2), 0, bound=2
        )
        assert witness.indices == (0, 1)
        assert witness.minor_value == 1

    def test_pade_x2_at_one(self):
        section, _ = pade_section(2)
        witness = nonvanishing_wedge_indices(section, EXP_SYSTEM, 1, bound=6)
        assert witness.indices == (0, 1)
        assert witness.minor_value == -1

    def test_rank_deficient_tower(self):
        with pytest.raises(BoundTooSmallError):
            nonvanishing_wedge_indices(
                PolySection([1, 1]), diagonal_system(1, 1), 0, bound=4
            )

    def test_pole_rejected(self):
        system = DifferentialSystem([["1/z", "0"], ["0", "1"]])
        with pytest.raises(SingularPointError):
            nonvanishing_wedge_indices(PolySection([1, 1]), system, 0, bound=3)

    def test_bound_below_rank(self):
        with pytest.raises(BoundTooSmallError):
            nonvanishing_wedge_indices(
                PolySection([1, 1]), diagonal_system(1, 2), 0, bound=0
            )
