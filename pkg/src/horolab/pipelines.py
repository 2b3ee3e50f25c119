"""Shared orchestration between the HTTP service and the command line.

Every pipeline takes a JSON-ready mapping (exact numbers as strings,
complex numbers as [re, im] pairs) and returns a JSON-ready dict.  The
service endpoints and the command line client are both thin wrappers
around these functions, so the two front ends cannot drift apart.
"""

from fractions import Fraction

import numpy as np
from mpmath import mp

from .auxiliary import VanishingProblem, construct_small_section, height_profile
from .connection import DifferentialSystem, local_solution_basis
from .errors import InputFormatError
from .independence import (
    RelationQuery,
    integer_relation_search,
    subspace_dimension_estimate,
)
from .isomonodromy import (
    MatrixOneForm,
    check_integrability,
    deformation_solution_basis,
    family_verification_report,
    log_twisted_family,
    matrix_is_zero,
    twist_matrix,
    verify_deformation_equation,
)
from .lg import certify_lg, check_e_section, coefficient_growth_order
from .nevanlinna import ExhaustionFunction, builtin_map, nevanlinna_report
from .zerolemma import zero_lemma_check, zero_lemma_family_csv_rows

SCHEMA_VERSION = "1"

# Values the independence search accepts by name.  Callables are resolved
# at the working precision of the search, so a 200 digit run really sees
# 200 correct digits.
NAMED_VALUES = {
    "e": lambda: mp.e,
    "e^2": lambda: mp.e**2,
    "pi": lambda: +mp.pi,
    "sqrt(2)": lambda: mp.sqrt(2),
    "sqrt(3)": lambda: mp.sqrt(3),
    "log(2)": lambda: mp.log(2),
}


def _fraction(text, name: str) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputFormatError(f"{name} must be a rational number", value=str(text)) from exc


def _complex_pair(value, name: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, str):
        return complex(_fraction(value, name))
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise InputFormatError(f"{name} must be a number, a fraction string, or an [re, im] pair")


def load_system(spec: dict) -> DifferentialSystem:
    if not isinstance(spec, dict):
        raise InputFormatError("system spec must be a JSON object with a 'matrix' field")
    return DifferentialSystem.from_json(spec)


def _initial_weights(spec: dict, rank: int):
    weights = spec.get("initial")
    if weights is None:
        return [Fraction(1)] * rank
    weights = [_fraction(w, "initial value") for w in weights]
    if len(weights) != rank:
        raise InputFormatError(
            "initial value length must match the system rank",
            expected=rank,
            got=len(weights),
        )
    return weights


def germ_vector(system: DifferentialSystem, weights, point, truncation: int):
    """Combination of the local solution basis with the given initial value."""
    basis = local_solution_basis(system, point, truncation)
    components = []
    for k in range(system.rank):
        acc = basis[0][k] * weights[0]
        for j in range(1, system.rank):
            acc = acc + basis[j][k] * weights[j]
        components.append(acc)
    return tuple(components)


def _series_json(series):
    return {
        "base": str(series.base),
        "coefficients": [str(c) for c in series.coeffs],
    }


# --- pipelines, one per subcommand ------------------------------------------------


def solve_pipeline(request: dict) -> dict:
    system = load_system(request["system"])
    point = _fraction(request.get("base_point", "0"), "base point")
    truncation = int(request.get("truncation", 16))
    basis = local_solution_basis(system, point, truncation)
    return {
        "system": system.to_json(),
        "base_point": str(point),
        "truncation": truncation,
        "basis": [[_series_json(c) for c in column] for column in basis],
    }


def certify_pipeline(request: dict) -> dict:
    system = load_system(request["system"])
    point = _fraction(request.get("base_point", "0"), "base point")
    truncation = int(request.get("truncation", 120))
    alpha = _fraction(request.get("alpha", "1"), "alpha")
    allowed = request.get("allowed_primes")
    if allowed is not None:
        allowed = [int(p) for p in allowed]
    weights = _initial_weights(request["system"], system.rank)
    germ = germ_vector(system, weights, point, truncation)
    certificate = certify_lg(germ, alpha, allowed_primes=allowed)
    out = {"certificate": certificate.to_json()}
    s = request.get("s")
    if s is not None:
        growth = _dominant_growth(germ)
        out["growth"] = growth.to_json()
        out["e_section"] = check_e_section(certificate, growth, int(s)).to_json()
    return out


def _dominant_growth(germ):
    """Growth estimate of the fastest-growing component of a germ vector."""
    best = None
    for component in germ:
        if component.is_zero_to_truncation():
            continue
        estimate = coefficient_growth_order(component)
        if best is None or (
            np.isfinite(estimate.rho)
            and (not np.isfinite(best.rho) or estimate.rho > best.rho)
        ):
            best = estimate
    if best is None:
        raise InputFormatError("germ vector is identically zero")
    return best


def _problem_for(system, weights, points, degree, order, truncation):
    germs = [
        (p, germ_vector(system, weights, p, truncation)) for p in points
    ]
    return VanishingProblem(germs, degree, order)


def _construct_inputs(request: dict):
    system = load_system(request["system"])
    weights = _initial_weights(request["system"], system.rank)
    points = [_fraction(p, "point") for p in request.get("points", ["0"])]
    if len(set(points)) != len(points):
        raise InputFormatError("expansion points must be distinct")
    degree = int(request["degree"])
    strategy = request.get("strategy", "spare")
    if strategy not in ("spare", "max"):
        raise InputFormatError("strategy must be 'spare' or 'max'", got=strategy)
    order = request.get("order")
    if order is not None:
        order = int(order)
    else:
        order = chooser_order(system.rank, degree, len(points), strategy)
    truncation = request.get("truncation")
    truncation = int(truncation) if truncation is not None else order + degree + 8
    return system, weights, points, degree, order, truncation, strategy


def construct_pipeline(request: dict) -> dict:
    system, weights, points, degree, order, truncation, strategy = _construct_inputs(request)
    problem = _problem_for(system, weights, points, degree, order, truncation)
    section = construct_small_section(problem)
    out = {
        "degree": degree,
        "order": order,
        "points": [str(p) for p in points],
        "strategy": strategy,
        "section": section.to_json(),
    }
    degrees = request.get("profile_degrees")
    if degrees:
        degrees = [int(x) for x in degrees]

        def problem_for_degree(x):
            nu = chooser_order(system.rank, x, len(points), strategy)
            return _problem_for(system, weights, points, x, nu, nu + x + 8)

        profile = height_profile(problem_for_degree, degrees)
        out["profile"] = profile.to_json()
        out["profile_csv"] = [list(row) for row in profile.csv_rows()]
    return out


def chooser_order(rank: int, degree: int, points: int, strategy: str) -> int:
    if strategy == "max":
        return VanishingProblem.max_order(rank, degree, points)
    return VanishingProblem.default_order(rank, degree, points)


def zero_lemma_pipeline(request: dict) -> dict:
    system = load_system(request["system"])
    weights = _initial_weights(request["system"], system.rank)
    points = [_fraction(p, "point") for p in request.get("points", ["0"])]
    degrees = [int(x) for x in request.get("degrees", [])]
    if not degrees and request.get("degree") is not None:
        degrees = [int(request["degree"])]
    if not degrees:
        raise InputFormatError("zero lemma run needs 'degree' or 'degrees'")
    strategy = request.get("strategy", "max")
    if strategy not in ("spare", "max"):
        raise InputFormatError("strategy must be 'spare' or 'max'", got=strategy)
    reports = []
    for x in degrees:
        order = chooser_order(system.rank, x, len(points), strategy)
        truncation = request.get("truncation")
        if truncation is not None:
            truncation = int(truncation)
        else:
            # enough both for post-hoc order checks and for the tower pairings
            truncation = max(order + x + 8, system.rank * (x + 2) + 2)
        problem = _problem_for(system, weights, points, x, order, truncation)
        constructed = construct_small_section(problem)
        germs = problem.points[0][1]
        report = zero_lemma_check(constructed.section, system, germs, x=x)
        reports.append(report)
    return {
        "degrees": degrees,
        "strategy": strategy,
        "reports": [r.to_json() for r in reports],
        "csv": [list(row) for row in zero_lemma_family_csv_rows(reports)],
    }


def _radius_grid(spec) -> list:
    if isinstance(spec, dict):
        lo = float(spec["min"])
        hi = float(spec["max"])
        steps = int(spec.get("steps", 16))
        if not (0 < lo < hi) or steps < 2:
            raise InputFormatError("radius grid needs 0 < min < max and steps >= 2")
        return [float(r) for r in np.geomspace(lo, hi, steps)]
    return [float(r) for r in spec]


def _analytic_map(spec: dict):
    name = spec.get("name")
    if name is None:
        raise InputFormatError("map spec needs a 'name' field")
    coefficients = spec.get("coefficients")
    if coefficients is not None:
        coefficients = [_complex_pair(c, "map coefficient") for c in coefficients]
    constant = spec.get("constant")
    if constant is not None:
        constant = _complex_pair(constant, "map constant")
    return builtin_map(name, coefficients=coefficients, constant=constant)


def _exhaustion(spec: dict) -> ExhaustionFunction:
    center = _complex_pair(spec.get("center", 0), "divisor center")
    divisor = []
    for item in spec.get("points", []):
        point = item.get("point")
        point = None if point is None else _complex_pair(point, "divisor point")
        divisor.append((point, int(item.get("multiplicity", 1))))
    if not divisor:
        divisor = [(None, 1)]
    return ExhaustionFunction(center, divisor)


def growth_pipeline(request: dict) -> dict:
    f = _analytic_map(request["map"])
    target = _complex_pair(request.get("target", 0), "target value")
    exh = _exhaustion(request.get("divisor", {}))
    grid = _radius_grid(request.get("rgrid", {"min": 2.0, "max": 256.0, "steps": 16}))
    zeros = request.get("zeros")
    if zeros is not None:
        zeros = [
            (_complex_pair(item["point"], "zero"), int(item.get("multiplicity", 1)))
            for item in zeros
        ]
    report = nevanlinna_report(
        f,
        target,
        exh,
        grid,
        zeros=zeros,
        n_samples=int(request.get("samples", 512)),
        raw=bool(request.get("raw", False)),
    )
    return {
        "report": report.to_json(),
        "csv": [list(row) for row in report.csv_rows()],
    }


def resolve_value(text: str):
    if text in NAMED_VALUES:
        return NAMED_VALUES[text]
    return str(text)


def independence_pipeline(request: dict) -> dict:
    names = [str(v) for v in request.get("values", [])]
    values = tuple(resolve_value(v) for v in names)
    degree = int(request.get("degree", 1))
    height_bound = int(request.get("height_bound", 100))
    precision = int(request.get("precision", 200))
    query = RelationQuery(
        values=values, degree=degree, height_bound=height_bound, precision=precision
    )
    report = integer_relation_search(query)
    out = {"values": names, "relation": report.to_json()}
    if request.get("subspace", False):
        estimate = subspace_dimension_estimate(values, degree, height_bound, precision)
        out["subspace"] = estimate.to_json()
    return out


def isomono_pipeline(request: dict) -> dict:
    if "one_form" in request:
        form = MatrixOneForm.from_json(request["one_form"])
        family = False
    else:
        spec = request.get("family", {})
        a = spec.get("a")
        b = spec.get("b")
        c = spec.get("c")
        form = log_twisted_family(
            None if a is None else _fraction(a, "a"),
            None if b is None else _fraction(b, "b"),
            None if c is None else _fraction(c, "c"),
        )
        family = True
    residual = check_integrability(form)
    out = {
        "one_form": form.to_json(),
        "integrable": matrix_is_zero(residual),
        "integrability_residual": [[entry.text() for entry in row] for row in residual],
    }
    if family:
        commutant = twist_matrix()
        out["deformation_basis_verified"] = [
            verify_deformation_equation(w, commutant)
            for w in deformation_solution_basis()
        ]
    return out


def family_pipeline(request: dict) -> dict:
    a = _fraction(request.get("a", "1/2"), "a")
    b = _fraction(request.get("b", "1/3"), "b")
    c = _fraction(request.get("c", "1"), "c")
    x_first = _fraction(request.get("x0", "1"), "x0")
    x_second = _fraction(request.get("x1", "2"), "x1")
    precision = int(request.get("precision", 30))
    report = family_verification_report(a, b, c, x_first, x_second, precision=precision)
    verdicts = {
        "integrability": "PASS" if report["integrable"] else "FAIL",
        "deformation_basis": (
            "PASS" if all(report["deformation_basis_verified"]) else "FAIL"
        ),
        "conjugacy": (
            "PASS" if report["conjugacy"]["verdict"] == "conjugate" else "FAIL"
        ),
        "conjugacy_residual": report["conjugacy"]["residual"],
    }
    report["summary"] = verdicts
    return report


PIPELINES = {
    "solve": solve_pipeline,
    "certify-lg": certify_pipeline,
    "construct": construct_pipeline,
    "zero-lemma": zero_lemma_pipeline,
    "growth": growth_pipeline,
    "independence": independence_pipeline,
    "isomono": isomono_pipeline,
    "example-1-3": family_pipeline,
}
