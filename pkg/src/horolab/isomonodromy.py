"""Integrable matrix one-forms in (z, x) and numerical monodromy.

Three layers live here.  The symbolic layer checks d(omega) = omega ^ omega
exactly for matrix one-forms P dz + Q dx with entries in the log-twisted
ring, and verifies solutions of the deformation equation
dW/dx = [W, N] / x.  The explicit layer builds a rank-2 family with a
double pole at z = 0 and simple poles at z = 1 and infinity whose members
are twists of each other by powers of x, so they share one monodromy
representation.  The numeric layer continues fundamental solutions around
circular loops with a high-order Taylor stepper over mpmath, refining the
step count until two runs agree to the requested precision, and compares
monodromy lists up to simultaneous conjugation through a stacked
least-squares intertwiner.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .connection import DifferentialSystem
from .errors import (
    InputFormatError,
    SingularityOnPathError,
    StiffIntegrationError,
    SymbolicDomainError,
)
from .parallel import map_ordered
from .symbolic import (
    ONE,
    SymbolicFunction,
    parse_symbolic,
    symbol,
)

# --- matrices of symbolic functions -----------------------------------------


def _entry(value) -> SymbolicFunction:
    if isinstance(value, SymbolicFunction):
        return value
    if isinstance(value, (int, Fraction)):
        return SymbolicFunction.constant(value)
    if isinstance(value, str):
        return parse_symbolic(value)
    raise InputFormatError(f"bad matrix entry of type {type(value).__name__}")


def matrix_of(rows):
    """Coerce nested entries (numbers, strings, functions) to a square matrix."""
    coerced = tuple(tuple(_entry(e) for e in row) for row in rows)
    size = len(coerced)
    if size == 0 or any(len(row) != size for row in coerced):
        raise InputFormatError("matrix must be square and non-empty")
    return coerced


def matrix_is_zero(matrix) -> bool:
    return all(entry.is_zero() for row in matrix for entry in row)


def _mat_add(first, second):
    return tuple(
        tuple(f + s for f, s in zip(frow, srow))
        for frow, srow in zip(first, second)
    )


def _mat_sub(first, second):
    return tuple(
        tuple(f - s for f, s in zip(frow, srow))
        for frow, srow in zip(first, second)
    )


def _mat_mul(first, second):
    size = len(first)
    return tuple(
        tuple(
            sum(
                (first[i][k] * second[k][j] for k in range(size)),
                start=SymbolicFunction.constant(0),
            )
            for j in range(size)
        )
        for i in range(size)
    )


def _mat_scale(matrix, factor: SymbolicFunction):
    return tuple(tuple(factor * entry for entry in row) for row in matrix)


def _mat_map(matrix, fn):
    return tuple(tuple(fn(entry) for entry in row) for row in matrix)


def commutator(first, second):
    """The matrix bracket [first, second] = first second - second first."""
    return _mat_sub(_mat_mul(first, second), _mat_mul(second, first))


@dataclass(frozen=True)
class MatrixOneForm:
    """Matrix-valued one-form P dz + Q dx with log-twisted entries."""

    dz_part: tuple
    dx_part: tuple
    size: int

    @classmethod
    def build(cls, dz_entries, dx_entries) -> "MatrixOneForm":
        dz = matrix_of(dz_entries)
        dx = matrix_of(dx_entries)
        if len(dz) != len(dx):
            raise InputFormatError(
                "dz and dx parts must have equal size", dz=len(dz), dx=len(dx)
            )
        return cls(dz_part=dz, dx_part=dx, size=len(dz))

    def to_json(self):
        return {
            "size": self.size,
            "dz": [[entry.text() for entry in row] for row in self.dz_part],
            "dx": [[entry.text() for entry in row] for row in self.dx_part],
        }

    @classmethod
    def from_json(cls, data) -> "MatrixOneForm":
        if "dz" not in data or "dx" not in data:
            raise InputFormatError("one-form JSON needs 'dz' and 'dx' fields")
        return cls.build(data["dz"], data["dx"])


def check_integrability(form: MatrixOneForm):
    """The dx^dz component of d(omega) - omega^omega, entry by entry.

    For omega = P dz + Q dx the component equals dP/dx - dQ/dz + PQ - QP;
    the form is integrable exactly when every entry is zero.
    """
    p_x = _mat_map(form.dz_part, lambda e: e.derivative_x())
    q_z = _mat_map(form.dx_part, lambda e: e.derivative_z())
    return _mat_add(
        _mat_sub(p_x, q_z), commutator(form.dz_part, form.dx_part)
    )


# --- the explicit log-twisted family ------------------------------------------


def twist_matrix():
    """The constant upper-triangular matrix driving the x-twist."""
    return matrix_of([[1, 1], [0, 1]])


def _parameter(value, name: str) -> SymbolicFunction:
    if value is None:
        return symbol(name)
    return _entry(value)


def log_twisted_family(a=None, b=None, c=None) -> MatrixOneForm:
    """Rank-2 integrable family whose members share their monodromy.

    The dz-part is A(x)/z^2 + B(x)/z + C/(z-1) with

        A(x) = [[a, (a-b) log x], [0, b]]
        B(x) = [[1 - log x, -log^2 x], [1, 1 + log x]]
        C    = [[1, c], [0, 1]]

    and the dx-part is -(1/x) [[1, 1], [0, 1]].  Every coefficient matrix
    is the conjugate x^{-N} W x^{N} of its value at x = 1, with N the
    twist matrix, so the whole family is one connection twisted by powers
    of x and all members have conjugated monodromy.  Parameters left as
    None stay symbolic.
    """
    a = _parameter(a, "a")
    b = _parameter(b, "b")
    c = _parameter(c, "c")
    z, x, log_x = symbol("z"), symbol("x"), symbol("L")
    one = ONE
    a_matrix = ((a, (a - b) * log_x), (SymbolicFunction.constant(0), b))
    b_matrix = (
        (one - log_x, -(log_x * log_x)),
        (one, one + log_x),
    )
    c_matrix = ((one, c), (SymbolicFunction.constant(0), one))
    dz = _mat_add(
        _mat_add(
            _mat_scale(a_matrix, one / (z * z)),
            _mat_scale(b_matrix, one / z),
        ),
        _mat_scale(c_matrix, one / (z - one)),
    )
    dx = _mat_scale(twist_matrix(), -(one / x))
    return MatrixOneForm(dz_part=dz, dx_part=dx, size=2)


def deformation_solution_basis():
    """Four independent solutions of dW/dx = [W, N]/x with N the twist matrix.

    They are the conjugates x^{-N} E x^{N} of the elementary matrices; the
    (2,2) entries carrying log x are easy to drop by hand but required for
    the equation to hold.
    """
    log_x = symbol("L")
    zero = SymbolicFunction.constant(0)
    return (
        matrix_of([[ONE, log_x], [zero, zero]]),
        matrix_of([[zero, ONE], [zero, zero]]),
        matrix_of([[-log_x, -(log_x * log_x)], [ONE, log_x]]),
        matrix_of([[zero, -log_x], [zero, ONE]]),
    )


def verify_deformation_equation(w_entries, commutant_entries) -> bool:
    """Exact check of dW/dx = [W, N]/x for W in the log-twisted ring."""
    w = matrix_of(w_entries)
    commutant = matrix_of(commutant_entries)
    for row in w:
        for entry in row:
            if entry.uses("z"):
                raise SymbolicDomainError(
                    "deformation solutions are functions of x alone",
                    entry=entry.text(),
                )
    for row in commutant:
        for entry in row:
            if any(entry.uses(name) for name in ("z", "x", "L")):
                raise SymbolicDomainError(
                    "the commutant matrix must be constant", entry=entry.text()
                )
    lhs = _mat_map(w, lambda e: e.derivative_x())
    rhs = _mat_scale(commutator(w, commutant), ONE / symbol("x"))
    return matrix_is_zero(_mat_sub(lhs, rhs))


# --- loops and numeric systems ---------------------------------------------------


@dataclass(frozen=True)
class LoopSpec:
    """Circular loop: center, radius, winding sense, and starting angle."""

    center: complex
    radius: float
    orientation: int = 1
    base_angle: float = 0.0

    def __post_init__(self):
        if self.radius <= 0:
            raise InputFormatError("loop radius must be positive")
        if self.orientation not in (1, -1):
            raise InputFormatError("orientation must be +1 or -1")

    def point(self, fraction_of_turn: float) -> complex:
        angle = self.base_angle + self.orientation * 2.0 * math.pi * fraction_of_turn
        return complex(self.center) + self.radius * cmath.exp(1j * angle)

    @property
    def base_point(self) -> complex:
        return self.point(0.0)

    def to_json(self):
        return {
            "center": [complex(self.center).real, complex(self.center).imag],
            "radius": float(self.radius),
            "orientation": self.orientation,
            "base_angle": float(self.base_angle),
        }


class NumericLinearSystem:
    """Square matrix of rational functions of z with mpmath coefficients."""

    def __init__(self, numerators, denominators, singularities):
        self.size = len(numerators)
        self.numerators = numerators
        self.denominators = denominators
        self.singularities = list(singularities)

    @classmethod
    def from_exact(cls, system: DifferentialSystem) -> "NumericLinearSystem":
        numerators = []
        denominators = []
        for row in system.matrix:
            num_row, den_row = [], []
            for entry in row:
                num_row.append(_poly_to_mp(entry.num))
                den_row.append(_poly_to_mp(entry.den))
            numerators.append(num_row)
            denominators.append(den_row)
        singular = [complex(Fraction(point)) for point, _ in system.pole_divisor]
        cofactor = system.nonrational_pole_factor
        if cofactor.degree() > 0:
            coeffs = [_fraction_to_mp(Fraction(c)) for c in _descending(cofactor)]
            singular.extend(complex(r) for r in mp.polyroots(coeffs))
        return cls(numerators, denominators, singular)

    @classmethod
    def from_one_form(cls, form: MatrixOneForm, assignments: dict) -> "NumericLinearSystem":
        """Freeze the dz-part at numeric x (and parameter) values."""
        numerators = []
        denominators = []
        singular = []
        for row in form.dz_part:
            num_row, den_row = [], []
            for entry in row:
                num_row.append(_collapse_in_z(entry.num, assignments))
                den_coeffs = _collapse_in_z(entry.den, assignments)
                den_row.append(den_coeffs)
                singular.extend(_roots_of(den_coeffs))
            numerators.append(num_row)
            denominators.append(den_row)
        deduped = []
        for root in singular:
            if all(abs(root - seen) > 1e-9 for seen in deduped):
                deduped.append(root)
        return cls(numerators, denominators, deduped)

    def local_series(self, z0, count: int):
        """Taylor coefficients of the matrix around z0, as nested lists."""
        zero = mp.mpc(0)
        series = [
            [[zero] * self.size for _ in range(self.size)] for _ in range(count)
        ]
        for i in range(self.size):
            for j in range(self.size):
                num = _shift_coeffs(self.numerators[i][j], z0)
                den = _shift_coeffs(self.denominators[i][j], z0)
                if abs(den[0]) == 0:
                    raise SingularityOnPathError(
                        "expansion point is a pole of the system",
                        point=str(complex(z0)),
                    )
                entry = _series_quotient(num, den, count)
                for k in range(count):
                    series[k][i][j] = entry[k]
        return series

    def nearest_singularity_distance(self, point: complex) -> float:
        if not self.singularities:
            return float("inf")
        return min(abs(point - s) for s in self.singularities)


def _fraction_to_mp(value: Fraction):
    return mp.mpf(value.numerator) / value.denominator


def _poly_to_mp(poly):
    degree = poly.degree()
    if degree < 0:
        return [mp.mpc(0)]
    return [mp.mpc(_fraction_to_mp(Fraction(poly.coeff(k)))) for k in range(degree + 1)]


def _descending(poly):
    return [poly.coeff(k) for k in range(poly.degree(), -1, -1)]


def _collapse_in_z(poly, assignments):
    grouped = poly.coefficients_in("z")
    if not grouped:
        return [mp.mpc(0)]
    top = max(grouped)
    coeffs = []
    for power in range(top + 1):
        if power in grouped:
            coeffs.append(mp.mpc(grouped[power].evaluate(assignments)))
        else:
            coeffs.append(mp.mpc(0))
    while len(coeffs) > 1 and abs(coeffs[-1]) == 0:
        coeffs.pop()
    return coeffs


def _roots_of(coeffs):
    if len(coeffs) <= 1:
        return []
    descending = [mp.mpc(c) for c in reversed(coeffs)]
    return [complex(r) for r in mp.polyroots(descending, maxsteps=200)]


def _shift_coeffs(coeffs, z0):
    """Coefficients of p(z0 + h) as a polynomial in h (synthetic division)."""
    z0 = mp.mpc(z0)
    work = [mp.mpc(c) for c in coeffs]
    n = len(work)
    shifted = []
    for _ in range(n):
        carry = mp.mpc(0)
        for k in range(len(work) - 1, -1, -1):
            carry = work[k] + z0 * carry
            work[k] = carry
        shifted.append(work.pop(0))
    return shifted


def _series_quotient(num, den, count: int):
    inverse_lead = 1 / den[0]
    quotient = []
    for k in range(count):
        total = num[k] if k < len(num) else mp.mpc(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            total -= den[j] * quotient[k - j]
        quotient.append(total * inverse_lead)
    return quotient


# --- monodromy continuation ---------------------------------------------------------


def _as_numeric_system(system) -> NumericLinearSystem:
    if isinstance(system, NumericLinearSystem):
        return system
    if isinstance(system, DifferentialSystem):
        return NumericLinearSystem.from_exact(system)
    raise InputFormatError(
        f"cannot integrate a {type(system).__name__}; "
        "expected a differential system or a numeric system"
    )


def _check_margin(numeric: NumericLinearSystem, loop: LoopSpec, margin: float = 0.1):
    center = complex(loop.center)
    for singularity in numeric.singularities:
        distance = abs(abs(singularity - center) - loop.radius)
        if distance < margin:
            raise SingularityOnPathError(
                "loop passes too close to a singular point",
                singularity=str(singularity),
                distance=distance,
                margin=margin,
            )


def _mp_loop_points(loop: LoopSpec, steps: int):
    """Path points at working precision; the endpoint closes exactly."""
    center = mp.mpc(complex(loop.center))
    radius = mp.mpf(loop.radius)
    base = mp.mpf(loop.base_angle)
    turn = loop.orientation * 2 * mp.pi
    points = [
        center + radius * mp.exp(1j * (base + turn * index / steps))
        for index in range(steps)
    ]
    points.append(points[0])
    return points


def _continue_around(numeric: NumericLinearSystem, loop: LoopSpec, steps: int, terms: int):
    size = numeric.size
    zero = mp.mpc(0)
    indices = range(size)
    current = [[mp.mpc(1) if i == j else zero for j in indices] for i in indices]
    points = _mp_loop_points(loop, steps)
    for index in range(steps):
        z0 = points[index]
        h = points[index + 1] - z0
        series = numeric.local_series(z0, terms)
        coefficients = [current]
        for k in range(terms - 1):
            accumulated = [[zero] * size for _ in indices]
            for j in range(k + 1):
                a_j = series[j]
                c_prev = coefficients[k - j]
                for i in indices:
                    a_row = a_j[i]
                    out_row = accumulated[i]
                    for t in indices:
                        factor = a_row[t]
                        if factor:
                            c_row = c_prev[t]
                            for col in indices:
                                out_row[col] += factor * c_row[col]
            divisor = k + 1
            coefficients.append(
                [[value / divisor for value in row] for row in accumulated]
            )
        value = [[zero] * size for _ in indices]
        for k in range(len(coefficients) - 1, -1, -1):
            c_k = coefficients[k]
            value = [
                [value[i][j] * h + c_k[i][j] for j in indices] for i in indices
            ]
        current = value
    return current


def _matrix_distance(first, second) -> float:
    return float(
        max(
            abs(f - s)
            for frow, srow in zip(first, second)
            for f, s in zip(frow, srow)
        )
    )


def _stepping_plan(numeric: NumericLinearSystem, loop: LoopSpec, precision: int):
    """Initial step count and expansion order for the requested accuracy.

    The chord-to-convergence-radius ratio governs the truncation error, so
    the step count keeps that ratio near 0.2 and the order is sized to
    push the geometric tail below the precision target.
    """
    probe = 64
    reach = min(
        numeric.nearest_singularity_distance(loop.point(t / probe))
        for t in range(probe)
    )
    reach = min(reach, 4.0 * loop.radius)
    steps = max(16, math.ceil(10.0 * math.pi * loop.radius / reach))
    ratio = 2.0 * loop.radius * math.sin(math.pi / steps) / reach
    terms = math.ceil((precision + 10) / -math.log10(ratio)) + 4
    return steps, min(terms, 160)


def numerical_monodromy(system, loop: LoopSpec, precision: int = 30):
    """Fundamental-solution transport around a loop, as Y(end) Y(start)^{-1}.

    Starts from the identity at the loop base point and takes Taylor steps
    along the circle, doubling the step count (and raising the expansion
    order) until two successive runs agree to the requested number of
    digits.  Works at a guarded precision and returns an mpmath matrix.
    """
    target = mp.mpf(10) ** (-precision)
    with mp.workdps(precision + 15):
        numeric = _as_numeric_system(system)
        _check_margin(numeric, loop)
        steps, terms = _stepping_plan(numeric, loop, precision)
        previous = _continue_around(numeric, loop, steps, terms)
        for _ in range(5):
            steps *= 2
            terms += 12
            current = _continue_around(numeric, loop, steps, terms)
            difference = _matrix_distance(current, previous)
            if difference <= target:
                return mp.matrix(current)
            previous = current
    raise StiffIntegrationError(
        "step refinement did not converge",
        steps=steps,
        last_difference=difference,
        requested_digits=precision,
    )


@dataclass
class MonodromyData:
    """Loop set and transport matrices at one family member."""

    base_point: complex
    loops: list
    matrices: list
    precision: int

    def liouville_defect(self, index: int, residue_trace) -> float:
        """Distance between det(M) and exp(2 pi i residue trace)."""
        determinant = mp.det(self.matrices[index])
        expected = mp.exp(2j * mp.pi * mp.mpmathify(residue_trace))
        return float(abs(determinant - expected))

    def to_json(self):
        return {
            "base_point": [self.base_point.real, self.base_point.imag],
            "loops": [loop.to_json() for loop in self.loops],
            "matrices": [_matrix_json(m) for m in self.matrices],
            "precision": self.precision,
        }


def _matrix_json(matrix):
    return [
        [[float(mp.re(matrix[i, j])), float(mp.im(matrix[i, j]))] for j in range(matrix.cols)]
        for i in range(matrix.rows)
    ]


# --- conjugacy of monodromy lists ------------------------------------------------------


def _coerce_mp_matrix(entries):
    if isinstance(entries, mp.matrix):
        return entries
    rows = [[mp.mpc(value) for value in row] for row in entries]
    return mp.matrix(rows)


@dataclass
class ConjugacyReport:
    """Best simultaneous intertwiner between two monodromy lists."""

    transform: list
    residual: float
    verdict: str
    transform_unique: bool
    smallest_singular: float
    second_smallest: float
    condition: float

    def to_json(self):
        return {
            "transform": self.transform,
            "residual": self.residual,
            "verdict": self.verdict,
            "transform_unique": self.transform_unique,
            "smallest_singular": self.smallest_singular,
            "second_smallest": self.second_smallest,
            "condition": self.condition,
        }


def _fro(matrix) -> mp.mpf:
    return mp.sqrt(
        sum(abs(matrix[i, j]) ** 2 for i in range(matrix.rows) for j in range(matrix.cols))
    )


def conjugacy_check(first_list, second_list, tolerance: float = 1e-8) -> ConjugacyReport:
    """Seek one invertible T with T M1_i = M2_i T for every i.

    Stacks the linear constraints on the entries of T, takes the smallest
    right singular vector, and reports the relative residual of the best
    T together with the two smallest singular values (a gap between them
    is what makes T well defined up to scale).  The verdict threshold
    scales with the condition of the input matrices; the raw residual is
    always part of the report.
    """
    first = [_coerce_mp_matrix(m) for m in first_list]
    second = [_coerce_mp_matrix(m) for m in second_list]
    if not first or len(first) != len(second):
        raise InputFormatError(
            "need two non-empty lists of equal length",
            first=len(first),
            second=len(second),
        )
    size = first[0].rows
    for matrix in first + second:
        if matrix.rows != size or matrix.cols != size:
            raise InputFormatError("all matrices must share one square size")

    stacked = mp.matrix(len(first) * size * size, size * size)
    for block, (m1, m2) in enumerate(zip(first, second)):
        for i in range(size):
            for j in range(size):
                row = block * size * size + i * size + j
                for k in range(size):
                    stacked[row, i * size + k] += m1[k, j]
                    stacked[row, k * size + j] -= m2[i, k]

    _, singular_values, v_factor = mp.svd(stacked)
    values = [singular_values[i] for i in range(singular_values.rows)]
    smallest = values[-1]
    second_smallest = values[-2] if len(values) > 1 else mp.mpf(0)
    largest = values[0]

    vec = [mp.conj(v_factor[v_factor.rows - 1, col]) for col in range(size * size)]
    transform = mp.matrix(size)
    for i in range(size):
        for j in range(size):
            transform[i, j] = vec[i * size + j]

    scale = _fro(transform)
    residual = mp.mpf(0)
    condition = mp.mpf(1)
    for m1, m2 in zip(first, second):
        defect = _fro(transform * m1 - m2 * transform)
        residual = max(residual, defect / (scale * max(_fro(m1), mp.mpf(1))))
        condition = max(condition, _condition_of(m1), _condition_of(m2))

    invertible = abs(mp.det(transform)) > (scale**size) * 1e-9
    threshold = mp.mpf(tolerance) * condition
    verdict = "conjugate" if (residual <= threshold and invertible) else "not-conjugate"
    unique = bool(second_smallest > 1e6 * max(smallest, largest * mp.mpf(1e-25)))
    return ConjugacyReport(
        transform=_matrix_json(transform),
        residual=float(residual),
        verdict=verdict,
        transform_unique=unique,
        smallest_singular=float(smallest),
        second_smallest=float(second_smallest),
        condition=float(condition),
    )


def _condition_of(matrix) -> mp.mpf:
    _, singular_values, _ = mp.svd(matrix)
    values = [singular_values[i] for i in range(singular_values.rows)]
    if not values or values[-1] == 0:
        return mp.mpf("1e300")
    return values[0] / values[-1]


# --- one-shot family verification --------------------------------------------------------


FAMILY_LOOPS = (
    LoopSpec(center=0.0, radius=0.5, orientation=1, base_angle=0.0),
    LoopSpec(center=1.0, radius=0.5, orientation=1, base_angle=math.pi),
)

# Trace of the z^{-1} coefficient and of the residue at z = 1; the log x
# terms cancel on the diagonal, so both equal 2 at every family member.
FAMILY_RESIDUE_TRACES = (2, 2)


def family_monodromy(a, b, c, x_value, precision: int = 30) -> MonodromyData:
    """Monodromy of one family member around z = 0 and z = 1, based at 1/2."""
    form = log_twisted_family(a, b, c)
    with mp.workdps(precision + 15):
        numeric = NumericLinearSystem.from_one_form(form, {"x": x_value})
    matrices = list(
        map_ordered(
            lambda loop: numerical_monodromy(numeric, loop, precision=precision),
            FAMILY_LOOPS,
        )
    )
    return MonodromyData(
        base_point=FAMILY_LOOPS[0].base_point,
        loops=list(FAMILY_LOOPS),
        matrices=matrices,
        precision=precision,
    )


def family_verification_report(a, b, c, x_first, x_second, precision: int = 30) -> dict:
    """Integrability, deformation basis, and cross-member conjugacy in one run.

    The symbolic part is exact; the numeric part reports the conjugacy
    residual between the monodromy pairs of the two requested members and
    the Liouville defects |det M - exp(2 pi i tr res)| of every matrix.
    """
    residual = check_integrability(log_twisted_family(None, None, None))
    integrable = matrix_is_zero(residual)
    commutant = twist_matrix()
    basis_verified = [
        verify_deformation_equation(w, commutant)
        for w in deformation_solution_basis()
    ]
    first = family_monodromy(a, b, c, x_first, precision=precision)
    second = family_monodromy(a, b, c, x_second, precision=precision)
    with mp.workdps(precision + 15):
        conjugacy = conjugacy_check(first.matrices, second.matrices)
        liouville = {
            "first": [
                first.liouville_defect(i, FAMILY_RESIDUE_TRACES[i]) for i in range(2)
            ],
            "second": [
                second.liouville_defect(i, FAMILY_RESIDUE_TRACES[i]) for i in range(2)
            ],
        }
    return {
        "parameters": {"a": str(a), "b": str(b), "c": str(c)},
        "members": {"first": str(x_first), "second": str(x_second)},
        "integrable": integrable,
        "integrability_residual": [
            [entry.text() for entry in row] for row in residual
        ],
        "deformation_basis_verified": basis_verified,
        "monodromy_first": first.to_json(),
        "monodromy_second": second.to_json(),
        "conjugacy": conjugacy.to_json(),
        "liouville_defects": liouville,
        "precision": precision,
    }
