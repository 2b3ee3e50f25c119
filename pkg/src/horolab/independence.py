"""Integer-relation probes for monomial vectors of evaluated germs.

A relation of height <= H among the degree <= n monomials of the input
values witnesses a drop of the monomial subspace dimension.  The
absence of a relation is always reported as inconclusive: this module
never asserts algebraic independence.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from mpmath import mp, pslq

from .errors import (
    IncompleteHypothesesError,
    InconclusiveSearchError,
    InputFormatError,
)

VERDICT_FOUND = "relation-found"
VERDICT_NONE = "none-found"
NONE_FOUND_CAVEAT = (
    "no relation within the height bound at this precision; "
    "this is not an independence claim"
)


def monomial_exponents(value_count: int, degree: int):
    """Exponent tuples of total degree <= degree, ascending by degree.

    The constant monomial (all zeros) comes first, so the list has
    binom(value_count + degree, degree) entries.
    """
    out = []
    for d in range(degree + 1):
        for combo in combinations_with_replacement(range(value_count), d):
            expo = [0] * value_count
            for v in combo:
                expo[v] += 1
            out.append(tuple(expo))
    assert len(out) == math.comb(value_count + degree, degree)
    return out


def _evaluate_value(value):
    """Resolve one input value at the current working precision."""
    if callable(value):
        return mp.mpf(value())
    if isinstance(value, str):
        return mp.mpf(value)
    if isinstance(value, Fraction):
        return mp.mpf(value.numerator) / mp.mpf(value.denominator)
    return mp.mpf(value)


def _monomial_values(values, exponents):
    resolved = [_evaluate_value(v) for v in values]
    out = []
    for expo in exponents:
        acc = mp.mpf(1)
        for base, e in zip(resolved, expo):
            if e:
                acc *= base**e
        out.append(acc)
    return out


def _normalize_relation(coeffs):
    g = 0
    for c in coeffs:
        g = math.gcd(g, abs(c))
    if g > 1:
        coeffs = [c // g for c in coeffs]
    last = max(i for i, c in enumerate(coeffs) if c != 0)
    if coeffs[last] < 0:
        coeffs = [-c for c in coeffs]
    return tuple(coeffs)


def relation_string(coeffs, exponents, value_count: int) -> str:
    """Human-readable form, e.g. ``y1^2 - y2`` or ``x^2 - 2``."""
    names = ["x"] if value_count == 1 else [f"y{i+1}" for i in range(value_count)]

    def monomial_name(expo):
        parts = []
        for name, e in zip(names, expo):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    terms = []
    for c, expo in zip(coeffs, exponents):
        if c == 0:
            continue
        name = monomial_name(expo)
        mag = abs(c)
        body = name if (mag == 1 and name) else (f"{mag}*{name}" if name else str(mag))
        terms.append(("-" if c < 0 else "+", body))
    # highest monomial first reads like a minimal polynomial
    terms.reverse()
    first_sign, first_body = terms[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text


@dataclass(frozen=True)
class RelationQuery:
    """One integer-relation search problem."""

    values: tuple
    degree: int
    height_bound: int
    precision: int = 200

    def __post_init__(self):
        if not self.values:
            raise InputFormatError("relation query needs at least one value")
        if self.degree < 1:
            raise InputFormatError("relation query needs degree >= 1")
        if self.height_bound < 1:
            raise InputFormatError("height bound must be positive")
        count = math.comb(len(self.values) + self.degree, self.degree)
        margin = 2 * math.log10(self.height_bound) * count
        if self.precision < margin:
            raise InconclusiveSearchError(
                "working precision below the detection soundness margin",
                precision=self.precision,
                required=math.ceil(margin),
            )

    @property
    def exponents(self):
        return monomial_exponents(len(self.values), self.degree)


@dataclass(frozen=True)
class RelationReport:
    """Outcome of one search; ``found`` is None for an inconclusive run."""

    found: tuple | None
    residual: float | None
    searched_height: int
    precision: int
    exponents: tuple
    value_count: int

    @property
    def verdict(self) -> str:
        return VERDICT_FOUND if self.found is not None else VERDICT_NONE

    @property
    def pretty(self) -> str | None:
        if self.found is None:
            return None
        return relation_string(self.found, self.exponents, self.value_count)

    def to_json(self):
        data = {
            "verdict": self.verdict,
            "searched_height": self.searched_height,
            "precision": self.precision,
            "monomial_exponents": [list(e) for e in self.exponents],
        }
        if self.found is None:
            data["caveat"] = NONE_FOUND_CAVEAT
        else:
            data["relation"] = list(self.found)
            data["relation_string"] = self.pretty
            data["residual"] = self.residual
        return data


def _search_once(values, exponents, height_bound, precision):
    """One PSLQ pass plus doubled-precision re-verification."""
    with mp.workdps(precision):
        monomials = _monomial_values(values, exponents)
        tiny = mp.mpf(10) ** (-(precision - 5))
        for i, value in enumerate(monomials):
            if abs(value) < tiny:
                unit = [0] * len(monomials)
                unit[i] = 1
                return _normalize_relation(unit), 0.0
        coeffs = pslq(monomials, maxcoeff=height_bound, maxsteps=200000)
    if coeffs is None:
        return None, None
    coeffs = _normalize_relation(coeffs)
    with mp.workdps(2 * precision):
        monomials = _monomial_values(values, exponents)
        residual = abs(mp.fsum(c * m for c, m in zip(coeffs, monomials)))
        threshold = mp.mpf(10) ** (-precision / 2)
        if residual > threshold:
            raise InconclusiveSearchError(
                "candidate relation failed doubled-precision verification",
                residual=float(residual),
                threshold=float(threshold),
            )
        residual = float(residual)
    return coeffs, residual


def integer_relation_search(query: RelationQuery) -> RelationReport:
    """Search the degree <= n monomial vector for one integer relation."""
    exponents = query.exponents
    coeffs, residual = _search_once(
        query.values, exponents, query.height_bound, query.precision
    )
    return RelationReport(
        found=coeffs,
        residual=residual,
        searched_height=query.height_bound,
        precision=query.precision,
        exponents=tuple(exponents),
        value_count=len(query.values),
    )


@dataclass(frozen=True)
class SubspaceEstimate:
    """Witnessed upper bound on the monomial-span dimension."""

    degree: int
    dim_e: int
    relations: tuple
    witness_dimension: int
    exponents: tuple
    value_count: int
    caveat: str = (
        "witness count only: further relations may exist beyond the "
        "height bound or precision"
    )

    def to_json(self):
        return {
            "degree": self.degree,
            "dim_e": self.dim_e,
            "relations": [list(r) for r in self.relations],
            "relation_strings": [
                relation_string(r, self.exponents, self.value_count)
                for r in self.relations
            ],
            "witness_dimension": self.witness_dimension,
            "caveat": self.caveat,
        }


def subspace_dimension_estimate(
    values, degree: int, height_bound: int, precision: int = 200
) -> SubspaceEstimate:
    """Greedily count independent relations; dim witness = dim E - found.

    After each hit the highest monomial of the relation is eliminated
    from the search vector, so successive relations are independent by
    construction.
    """
    query = RelationQuery(
        values=tuple(values),
        degree=degree,
        height_bound=height_bound,
        precision=precision,
    )
    exponents = query.exponents
    active = list(range(len(exponents)))
    relations = []
    while len(active) >= 2:
        subset = [exponents[i] for i in active]
        coeffs, _ = _search_once(query.values, subset, height_bound, precision)
        if coeffs is None:
            break
        full = [0] * len(exponents)
        for idx, c in zip(active, coeffs):
            full[idx] = c
        relations.append(_normalize_relation(full))
        pivot = max(i for i, c in enumerate(full) if c != 0)
        active.remove(pivot)
    dim_e = len(exponents)
    return SubspaceEstimate(
        degree=degree,
        dim_e=dim_e,
        relations=tuple(relations),
        witness_dimension=dim_e - len(relations),
        exponents=tuple(exponents),
        value_count=len(query.values),
    )


def ratio_witness_profile(values, max_degree: int, height_bound: int, precision: int = 200):
    """Witnessed dim V_n / dim E_n per degree n = 1..max_degree."""
    out = []
    for n in range(1, max_degree + 1):
        estimate = subspace_dimension_estimate(values, n, height_bound, precision)
        out.append(
            (n, estimate.witness_dimension, estimate.dim_e,
             Fraction(estimate.witness_dimension, estimate.dim_e))
        )
    return out


# --- the scalar Cramer-rule bound -----------------------------------------------


@dataclass(frozen=True)
class CramerBoundReport:
    """Lower bound r1 >= (m c2 - c3) / c1 over the rationals."""

    m: int
    c1: Fraction
    c2: Fraction
    c3: Fraction
    r1_lower_bound: Fraction
    vacuous: bool

    def to_json(self):
        return {
            "m": self.m,
            "c1": str(self.c1),
            "c2": str(self.c2),
            "c3": str(self.c3),
            "r1_lower_bound": str(self.r1_lower_bound),
            "r1_lower_bound_float": float(self.r1_lower_bound),
            "vacuous": self.vacuous,
        }


def cramer_bound_report(m: int, c1=None, c2=None, c3=None) -> CramerBoundReport:
    """Evaluate the height-versus-vanishing inequality over the rationals.

    c1 scales the section heights (sup log-height / (x log x)), c2 the
    per-section vanishing gain, c3 the additive slack.  Missing bounds
    are an error: the inequality is only meaningful with all three.
    """
    missing = [name for name, v in (("c1", c1), ("c2", c2), ("c3", c3)) if v is None]
    if missing:
        raise IncompleteHypothesesError(
            "hypothesis bounds missing", missing=missing
        )
    c1 = Fraction(c1)
    c2 = Fraction(c2)
    c3 = Fraction(c3)
    if c1 <= 0:
        raise InputFormatError("c1 must be positive", c1=str(c1))
    bound = (m * c2 - c3) / c1
    return CramerBoundReport(
        m=m, c1=c1, c2=c2, c3=c3, r1_lower_bound=bound, vacuous=bound <= 0
    )


def measured_constants(profile, reports):
    """(c1, c2, c3) from a height profile and zero-lemma reports.

    c1 is the observed sup of log-height / (x log x), c2 the observed
    vanishing excess, c3 zero: the measured stand-ins for the abstract
    hypothesis bounds.
    """
    c1 = Fraction(profile.ratio_max)
    c2 = Fraction(max(report.measured_c for report in reports))
    return c1, c2, Fraction(0)
