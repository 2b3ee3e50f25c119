"""Integrability, deformation solutions, monodromy transport, conjugacy."""

import math
from fractions import Fraction

import mpmath as mp
import pytest

from horolab.connection import DifferentialSystem
from horolab.errors import (
    InputFormatError,
    SingularityOnPathError,
    SymbolicDomainError,
)
from horolab.isomonodromy import (
    FAMILY_LOOPS,
    FAMILY_RESIDUE_TRACES,
    LoopSpec,
    MatrixOneForm,
    NumericLinearSystem,
    check_integrability,
    conjugacy_check,
    deformation_solution_basis,
    family_monodromy,
    family_verification_report,
    log_twisted_family,
    matrix_is_zero,
    matrix_of,
    numerical_monodromy,
    twist_matrix,
    verify_deformation_equation,
)
from horolab.symbolic import ONE, parse_symbolic, symbol

A_VALUE = Fraction(1, 2)
B_VALUE = Fraction(1, 3)


def _as_complex(pair):
    return complex(pair[0], pair[1])


class TestIntegrability:
    def test_family_residual_is_exactly_zero(self):
        residual = check_integrability(log_twisted_family(None, None, None))
        assert matrix_is_zero(residual)

    def test_numeric_parameters_also_integrable(self):
        residual = check_integrability(log_twisted_family(A_VALUE, B_VALUE, 1))
        assert matrix_is_zero(residual)

    def test_perturbed_entry_breaks_integrability(self):
        family = log_twisted_family(None, None, None)
        bumped = list(list(row) for row in family.dz_part)
        bumped[0][0] = bumped[0][0] + parse_symbolic("1/z")
        perturbed = MatrixOneForm.build(bumped, family.dx_part)
        assert not matrix_is_zero(check_integrability(perturbed))

    def test_x_independent_closed_form_is_integrable(self):
        zero = 0
        form = MatrixOneForm.build(
            [["1/z", zero], [zero, "1/(z-1)"]], [[zero, zero], [zero, zero]]
        )
        assert matrix_is_zero(check_integrability(form))

    def test_json_round_trip(self):
        family = log_twisted_family(None, None, None)
        clone = MatrixOneForm.from_json(family.to_json())
        assert matrix_is_zero(check_integrability(clone))
        difference = [
            [left - right for left, right in zip(lrow, rrow)]
            for lrow, rrow in zip(family.dz_part, clone.dz_part)
        ]
        assert matrix_is_zero(difference)


class TestDeformationEquation:
    def test_all_four_basis_elements_verify(self):
        commutant = twist_matrix()
        for element in deformation_solution_basis():
            assert verify_deformation_equation(element, commutant)

    def test_log_square_element_needs_its_corner_term(self):
        broken = matrix_of([["-log(x)", "-log(x)^2"], [1, 0]])
        assert not verify_deformation_equation(broken, twist_matrix())

    def test_identity_solves_and_linear_x_does_not(self):
        assert verify_deformation_equation([[1, 0], [0, 1]], twist_matrix())
        assert not verify_deformation_equation([["x", 0], [0, 0]], twist_matrix())

    def test_solutions_form_a_rational_vector_space(self):
        basis = deformation_solution_basis()
        weights = [Fraction(3), Fraction(-1, 2), Fraction(5, 7), Fraction(2)]
        combined = [
            [
                sum(
                    (
                        parse_symbolic(str(w)) * basis[k][i][j]
                        for k, w in enumerate(weights)
                    ),
                    start=parse_symbolic("0"),
                )
                for j in range(2)
            ]
            for i in range(2)
        ]
        assert verify_deformation_equation(combined, twist_matrix())

    def test_z_dependence_rejected(self):
        with pytest.raises(SymbolicDomainError):
            verify_deformation_equation([["z", 0], [0, 0]], twist_matrix())

    def test_commutant_must_be_constant(self):
        with pytest.raises(SymbolicDomainError):
            verify_deformation_equation([[1, 0], [0, 1]], [["x", 0], [0, 1]])


class TestLoops:
    def test_family_loops_share_base_point(self):
        first, second = FAMILY_LOOPS
        assert first.base_point == pytest.approx(0.5)
        assert second.base_point == pytest.approx(0.5)

    def test_bad_loops_rejected(self):
        with pytest.raises(InputFormatError):
            LoopSpec(center=0.0, radius=0.0)
        with pytest.raises(InputFormatError):
            LoopSpec(center=0.0, radius=1.0, orientation=2)


class TestNumericFreeze:
    def test_entries_match_symbolic_evaluation(self):
        family = log_twisted_family(A_VALUE, B_VALUE, 1)
        numeric = NumericLinearSystem.from_one_form(family, {"x": 2})
        z_point = mp.mpf(3)
        for i in range(2):
            for j in range(2):
                num = sum(
                    c * z_point**k for k, c in enumerate(numeric.numerators[i][j])
                )
                den = sum(
                    c * z_point**k for k, c in enumerate(numeric.denominators[i][j])
                )
                direct = family.dz_part[i][j].evaluate({"z": 3, "x": 2})
                assert abs(num / den - direct) < 1e-12

    def test_pole_locations_recovered(self):
        family = log_twisted_family(A_VALUE, B_VALUE, 1)
        numeric = NumericLinearSystem.from_one_form(family, {"x": 1})
        found = sorted(
            (round(s.real, 6), round(s.imag, 6)) for s in numeric.singularities
        )
        assert found == [(0.0, 0.0), (1.0, 0.0)]

    def test_exact_system_poles_recovered(self):
        system = DifferentialSystem([["1/(2*z)", "0"], ["0", "1/(z-1)"]])
        numeric = NumericLinearSystem.from_exact(system)
        assert sorted(s.real for s in numeric.singularities) == [0.0, 1.0]


class TestMonodromyTransport:
    def test_scaled_logarithms_give_diagonal_rotations(self):
        system = DifferentialSystem([["1/(2*z)", "0"], ["0", "1/(3*z)"]])
        matrix = numerical_monodromy(
            system, LoopSpec(center=0.0, radius=0.5), precision=20
        )
        with mp.workdps(40):
            errors = [
                abs(matrix[0, 0] - mp.exp(1j * mp.pi)),
                abs(matrix[1, 1] - mp.exp(2j * mp.pi / 3)),
                abs(matrix[0, 1]),
                abs(matrix[1, 0]),
            ]
        assert max(float(e) for e in errors) < 1e-18

    def test_loop_without_singularities_is_trivial(self):
        system = DifferentialSystem([["1/(2*z)", "0"], ["0", "1/(3*z)"]])
        matrix = numerical_monodromy(
            system, LoopSpec(center=3.0, radius=0.5), precision=15
        )
        defect = max(
            abs(matrix[i, j] - (1 if i == j else 0)) for i in range(2) for j in range(2)
        )
        assert float(defect) < 1e-14

    def test_loop_too_close_to_singularity_rejected(self):
        system = DifferentialSystem([["1/(2*z)", "0"], ["0", "1/(3*z)"]])
        with pytest.raises(SingularityOnPathError):
            numerical_monodromy(system, LoopSpec(center=0.0, radius=0.05), precision=10)

    def test_family_loop_at_one_is_unipotent(self):
        family = log_twisted_family(A_VALUE, B_VALUE, 1)
        with mp.workdps(30):
            numeric = NumericLinearSystem.from_one_form(family, {"x": 1})
        matrix = numerical_monodromy(numeric, FAMILY_LOOPS[1], precision=15)
        with mp.workdps(30):
            identity = mp.eye(2)
            off = matrix - identity
            squared = off * off
            assert float(mp.norm(off)) > 0.1
            assert float(mp.norm(squared)) < 1e-10
            assert abs(float(mp.re(matrix[0, 0] + matrix[1, 1])) - 2.0) < 1e-10

    def test_two_precisions_agree(self):
        family = log_twisted_family(A_VALUE, B_VALUE, 1)
        results = []
        for digits in (12, 18):
            with mp.workdps(digits + 15):
                numeric = NumericLinearSystem.from_one_form(family, {"x": 1})
            results.append(numerical_monodromy(numeric, FAMILY_LOOPS[0], precision=digits))
        with mp.workdps(40):
            diff = max(
                abs(results[0][i, j] - results[1][i, j])
                for i in range(2)
                for j in range(2)
            )
        assert float(diff) < 1e-12


class TestConjugacy:
    PAIR = ([[0, 1], [1, 0]], [[1, 1], [0, 1]])

    def test_identical_lists_give_scalar_transform(self):
        report = conjugacy_check(self.PAIR, self.PAIR)
        assert report.verdict == "conjugate"
        assert report.residual < 1e-12
        transform = [[_as_complex(v) for v in row] for row in report.transform]
        scale = transform[0][0]
        assert abs(transform[0][1] / scale) < 1e-10
        assert abs(transform[1][0] / scale) < 1e-10
        assert abs(transform[1][1] / scale - 1) < 1e-10

    def test_recovers_integer_conjugation(self):
        g = mp.matrix([[2, 1], [1, 1]])
        g_inv = g**-1
        first = [mp.matrix(m) for m in self.PAIR]
        second = [g * m * g_inv for m in first]
        report = conjugacy_check(first, second)
        assert report.verdict == "conjugate"
        assert report.residual < 1e-10
        transform = mp.matrix(
            [[_as_complex(v) for v in row] for row in report.transform]
        )
        defect = max(
            float(mp.norm(transform * m1 - m2 * transform))
            for m1, m2 in zip(first, second)
        )
        assert defect < 1e-9 * float(mp.norm(transform))

    def test_distinct_spectra_are_not_conjugate(self):
        # A single diagonal pair still admits a rank-one intertwiner with
        # zero defect, so the verdict must come from the invertibility
        # check rather than the residual.
        report = conjugacy_check([[[2, 0], [0, 1]]], [[[3, 0], [0, 1]]])
        assert report.verdict == "not-conjugate"
        transform = [[_as_complex(v) for v in row] for row in report.transform]
        determinant = (
            transform[0][0] * transform[1][1] - transform[0][1] * transform[1][0]
        )
        assert abs(determinant) < 1e-9

    def test_incompatible_pair_has_a_real_defect(self):
        unipotent = [[1, 1], [0, 1]]
        report = conjugacy_check(
            [[[2, 0], [0, 1]], unipotent], [[[3, 0], [0, 1]], unipotent]
        )
        assert report.verdict == "not-conjugate"
        assert report.residual > 1e-3

    def test_verdict_symmetric_under_swap(self):
        g = mp.matrix([[2, 1], [1, 1]])
        first = [mp.matrix(m) for m in self.PAIR]
        second = [g * m * g**-1 for m in first]
        assert (
            conjugacy_check(first, second).verdict
            == conjugacy_check(second, first).verdict
        )
        bad_one = [[[2, 0], [0, 1]]]
        bad_two = [[[3, 0], [0, 1]]]
        assert (
            conjugacy_check(bad_one, bad_two).verdict
            == conjugacy_check(bad_two, bad_one).verdict
        )

    def test_input_validation(self):
        with pytest.raises(InputFormatError):
            conjugacy_check([], [])
        with pytest.raises(InputFormatError):
            conjugacy_check([[[1, 0], [0, 1]]], [])


class TestFamilyPipeline:
    def test_two_members_share_monodromy(self):
        report = family_verification_report(
            A_VALUE, B_VALUE, 1, 1, 2, precision=20
        )
        assert report["integrable"] is True
        assert report["deformation_basis_verified"] == [True, True, True, True]
        assert report["conjugacy"]["verdict"] == "conjugate"
        assert report["conjugacy"]["residual"] <= 1e-6
        for side in ("first", "second"):
            for defect in report["liouville_defects"][side]:
                assert defect <= 1e-6
        transform = [
            [_as_complex(v) for v in row] for row in report["conjugacy"]["transform"]
        ]
        scale = transform[0][0]
        normalized = [[value / scale for value in row] for row in transform]
        assert abs(normalized[0][1] + math.log(2)) < 1e-8
        assert abs(normalized[1][0]) < 1e-8
        assert abs(normalized[1][1] - 1) < 1e-8
