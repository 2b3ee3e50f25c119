"""Linear differential systems Y' = A Y on the projective line, their local
series solutions, and the dual calculus on polynomial sections.

Conventions used throughout:

* a system is a square matrix A of rational functions; solutions are column
  vectors, sections are row vectors of polynomials;
* the pairing <P, f> = sum_k P_k f_k is a scalar series at the germ's base
  point;
* the dual derivative is D(P) = N P' + P (N A) where N is a polynomial
  multiplier clearing every pole of A, so that d/dz <P, f> satisfies
  N (d/dz <P, f>) = <D(P), f> whenever f solves the system.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb

from .errors import (
    InputFormatError,
    NonIntegralDerivationError,
    PairingMismatchError,
    SingularPointError,
)
from .exact import Polynomial, RationalFunction, TruncatedSeries, vector_height
from .expressions import parse_rational_function


class DifferentialSystem:
    """Square matrix of rational functions with pole bookkeeping."""

    def __init__(self, matrix):
        rows = []
        for row in matrix:
            rows.append(tuple(self._coerce(entry) for entry in row))
        self.matrix = tuple(rows)
        self.rank = len(self.matrix)
        if self.rank == 0:
            raise InputFormatError("empty system")
        for row in self.matrix:
            if len(row) != self.rank:
                raise InputFormatError(
                    "system matrix must be square",
                    rows=self.rank,
                    cols=len(row),
                )
        self.denominator_lcm = self._denominator_lcm()
        self.pole_divisor, self.nonrational_pole_factor = self._pole_divisor()

    @staticmethod
    def _coerce(entry):
        if isinstance(entry, RationalFunction):
            return entry
        if isinstance(entry, (int, Fraction, Polynomial)):
            return RationalFunction(entry, 1)
        if isinstance(entry, str):
            return parse_rational_function(entry)
        raise InputFormatError(f"bad system entry of type {type(entry).__name__}")

    def _denominator_lcm(self) -> Polynomial:
        acc = Polynomial.one()
        for row in self.matrix:
            for entry in row:
                acc = acc.lcm(entry.den)
        return acc

    def _pole_divisor(self):
        roots, cofactor = self.denominator_lcm.rational_roots()
        divisor = sorted(roots)
        return tuple(divisor), cofactor

    def is_singular_at(self, point) -> bool:
        return self.denominator_lcm(Fraction(point)) == 0

    def entry(self, i: int, j: int) -> RationalFunction:
        return self.matrix[i][j]

    def __eq__(self, other):
        if not isinstance(other, DifferentialSystem):
            return NotImplemented
        return self.matrix == other.matrix

    # --- serialization ----------------------------------------------------

    def to_json(self):
        return {
            "rank": self.rank,
            "matrix": [[e.to_str() for e in row] for row in self.matrix],
            "poles": [
                {"point": str(pt), "multiplicity": mult} for pt, mult in self.pole_divisor
            ],
        }

    @classmethod
    def from_json(cls, data):
        if "matrix" not in data:
            raise InputFormatError("system JSON needs a 'matrix' field")
        sys = cls(data["matrix"])
        if "rank" in data and data["rank"] != sys.rank:
            raise InputFormatError(
                "declared rank disagrees with matrix size",
                declared=data["rank"],
                actual=sys.rank,
            )
        return sys


def diagonal_system(*constants) -> DifferentialSystem:
    m = len(constants)
    return DifferentialSystem(
        [[constants[i] if i == j else 0 for j in range(m)] for i in range(m)]
    )


# --- derivation field -------------------------------------------------------


@dataclass(frozen=True)
class DerivationField:
    """The operator N(z) d/dz; N must clear every pole of the system."""

    multiplier: Polynomial

    @classmethod
    def minimal_for(cls, system: DifferentialSystem) -> "DerivationField":
        return cls(system.denominator_lcm)

    @classmethod
    def d_dz(cls) -> "DerivationField":
        return cls(Polynomial.one())

    def cleared_matrix(self, system: DifferentialSystem):
        """N*A as a polynomial matrix; raises when N fails to clear a pole."""
        out = []
        for row in system.matrix:
            prow = []
            for entry in row:
                cleared = RationalFunction(self.multiplier, 1) * entry
                if not cleared.is_polynomial():
                    raise NonIntegralDerivationError(
                        "multiplier does not clear the system's poles",
                        multiplier=self.multiplier.to_str(),
                        entry=entry.to_str(),
                    )
                prow.append(cleared.num)
            out.append(tuple(prow))
        return tuple(out)


# --- local solutions ---------------------------------------------------------


def local_solution_basis(system: DifferentialSystem, base_point, truncation_order: int):
    """Series solution basis at an ordinary point.

    Returns m solution vectors (tuples of TruncatedSeries), the i-th one
    having value = i-th unit vector at the base point.  Coefficients follow
    the first-order recursion c_{k+1} = (sum_j A_j c_{k-j}) / (k+1).
    """
    a = Fraction(base_point)
    if system.is_singular_at(a):
        raise SingularPointError(
            "series solutions requested at a singular point", point=str(a)
        )
    m = system.rank
    T = truncation_order
    A = [
        [system.entry(i, j).taylor_coefficients_at(a, T) for j in range(m)]
        for i in range(m)
    ]
    basis = []
    for unit in range(m):
        coeffs = [[Fraction(0)] * m for _ in range(T + 1)]
        coeffs[0][unit] = Fraction(1)
        for k in range(T):
            nxt = [Fraction(0)] * m
            for j in range(k + 1):
                ck = coeffs[k - j]
                for i in range(m):
                    Ai = A[i]
                    acc = Fraction(0)
                    for l in range(m):
                        aj = Ai[l][j]
                        if aj:
                            acc += aj * ck[l]
                    if acc:
                        nxt[i] += acc
            coeffs[k + 1] = [v / (k + 1) for v in nxt]
        basis.append(
            tuple(
                TruncatedSeries(a, [coeffs[k][i] for k in range(T + 1)])
                for i in range(m)
            )
        )
    return basis


def check_solves_system(germ_vector, system: DifferentialSystem):
    """Exact check that (f_i)' = sum_j A_ij f_j up to the truncation order."""
    base = germ_vector[0].base
    T = germ_vector[0].truncation_order
    m = system.rank
    if len(germ_vector) != m:
        raise PairingMismatchError(
            "germ vector length disagrees with system rank",
            germ=len(germ_vector),
            rank=m,
        )
    for i in range(m):
        lhs = germ_vector[i].derivative()
        rhs = TruncatedSeries.zero(base, T - 1)
        for j in range(m):
            aij = system.entry(i, j).taylor_coefficients_at(base, T)
            prod = germ_vector[j].truncate(T - 1) * TruncatedSeries(base, aij[:T])
            rhs = rhs + prod
        if lhs != rhs:
            return False
    return True


# --- polynomial sections ------------------------------------------------------


class PolySection:
    """Row vector of polynomials paired against solution columns."""

    __slots__ = ("components", "degree_bound")

    def __init__(self, components, degree_bound=None):
        comps = []
        for c in components:
            if isinstance(c, Polynomial):
                comps.append(c)
            elif isinstance(c, (int, Fraction)):
                comps.append(Polynomial((c,)))
            elif isinstance(c, (list, tuple)):
                comps.append(Polynomial(c))
            elif isinstance(c, str):
                rf = parse_rational_function(c)
                if not rf.is_polynomial():
                    raise InputFormatError("section components must be polynomials")
                comps.append(rf.num)
            else:
                raise InputFormatError(f"bad section component {type(c).__name__}")
        self.components = tuple(comps)
        actual = max((c.degree() for c in self.components), default=-1)
        self.degree_bound = actual if degree_bound is None else degree_bound
        if self.degree_bound < actual:
            raise InputFormatError(
                "declared degree bound below an actual component degree",
                declared=self.degree_bound,
                actual=actual,
            )

    def __len__(self):
        return len(self.components)

    def __eq__(self, other):
        if not isinstance(other, PolySection):
            return NotImplemented
        return self.components == other.components

    def __repr__(self):
        return f"PolySection([{', '.join(c.to_str() for c in self.components)}])"

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def height(self) -> float:
        """Max logarithmic height over all coefficients of all components."""
        vals = []
        for c in self.components:
            vals.extend(c.coeffs)
        return vector_height(vals)

    def coefficient_vector(self, degree_bound=None):
        """Flattened coefficients, component-major, ascending degree."""
        d = self.degree_bound if degree_bound is None else degree_bound
        out = []
        for c in self.components:
            out.extend(c.coeff(k) for k in range(d + 1))
        return out

    def scaled_to_integers(self) -> "PolySection":
        """Primitive integer form: clear denominators, divide by content."""
        from math import gcd as int_gcd

        den = 1
        for c in self.components:
            for q in c.coeffs:
                den = den * q.denominator // int_gcd(den, q.denominator)
        ints = []
        g = 0
        for c in self.components:
            row = [int(q * den) for q in c.coeffs]
            ints.append(row)
            for v in row:
                g = int_gcd(g, abs(v))
        if g == 0:
            return PolySection([Polynomial(())] * len(self.components))
        return PolySection(
            [Polynomial([v // g for v in row]) for row in ints],
            degree_bound=self.degree_bound,
        )

    def to_json(self):
        return {
            "degree_bound": self.degree_bound,
            "components": [[str(q) for q in c.coeffs] for c in self.components],
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            [Polynomial([Fraction(s) for s in comp]) for comp in data["components"]],
            degree_bound=data.get("degree_bound"),
        )


def dual_derivative(
    section: PolySection,
    system: DifferentialSystem,
    derivation: DerivationField | None = None,
) -> PolySection:
    """D(P) = N P' + P (N A), the operator dual to N d/dz on solutions."""
    if len(section) != system.rank:
        raise PairingMismatchError(
            "section length disagrees with system rank",
            section=len(section),
            rank=system.rank,
        )
    der = derivation or DerivationField.minimal_for(system)
    NA = der.cleared_matrix(system)
    N = der.multiplier
    m = system.rank
    out = []
    for j in range(m):
        acc = N * section.components[j].derivative()
        for k in range(m):
            acc = acc + section.components[k] * NA[k][j]
        out.append(acc)
    return PolySection(out)


def derivative_tower(
    section: PolySection,
    system: DifferentialSystem,
    length: int,
    derivation: DerivationField | None = None,
):
    """[P, D(P), D^2(P), ..., D^length(P)]."""
    der = derivation or DerivationField.minimal_for(system)
    tower = [section]
    for _ in range(length):
        tower.append(dual_derivative(tower[-1], system, der))
    return tower


# --- symmetric powers ---------------------------------------------------------


def monomial_indices(rank: int, n: int):
    """Exponent tuples of total degree n in `rank` variables.

    Ordered by combinations_with_replacement, so for rank 2 and n 2:
    (2,0), (1,1), (0,2).
    """
    out = []
    for combo in combinations_with_replacement(range(rank), n):
        expo = [0] * rank
        for v in combo:
            expo[v] += 1
        out.append(tuple(expo))
    return out


def symmetric_power_system(system: DifferentialSystem, n: int):
    """System satisfied by degree-n monomials in the solution coordinates.

    Returns (system_n, monomials); the rank is binom(m+n-1, n).
    """
    if n < 1:
        raise InputFormatError("symmetric power degree must be >= 1")
    m = system.rank
    monomials = monomial_indices(m, n)
    index = {mono: k for k, mono in enumerate(monomials)}
    size = len(monomials)
    assert size == comb(m + n - 1, n)
    zero = RationalFunction.zero()
    rows = [[zero for _ in range(size)] for _ in range(size)]
    for r, alpha in enumerate(monomials):
        # d/dz y^alpha = sum_i alpha_i y^(alpha - e_i) y_i'
        #             = sum_{i,j} alpha_i A_ij y^(alpha - e_i + e_j)
        for i in range(m):
            if alpha[i] == 0:
                continue
            for j in range(m):
                a = system.entry(i, j)
                if a.is_zero():
                    continue
                beta = list(alpha)
                beta[i] -= 1
                beta[j] += 1
                c = index[tuple(beta)]
                rows[r][c] = rows[r][c] + alpha[i] * a
    return DifferentialSystem(rows), monomials


def monomial_lift(germ_vector, n: int):
    """Degree-n monomial vector of a solution germ, as truncated series."""
    monomials = monomial_indices(len(germ_vector), n)
    base = germ_vector[0].base
    T = germ_vector[0].truncation_order
    out = []
    for alpha in monomials:
        acc = TruncatedSeries(base, [1] + [0] * T)
        for i, e in enumerate(alpha):
            for _ in range(e):
                acc = acc * germ_vector[i]
        out.append(acc)
    return out


# --- pairing -------------------------------------------------------------------


def pair(section: PolySection, germ_vector) -> TruncatedSeries:
    """<P, f> = sum_k P_k f_k as a truncated series at the germ base point."""
    if len(section) != len(germ_vector):
        raise PairingMismatchError(
            "section and germ vector have different lengths",
            section=len(section),
            germ=len(germ_vector),
        )
    base = germ_vector[0].base
    T = min(g.truncation_order for g in germ_vector)
    for g in germ_vector:
        if g.base != base:
            raise PairingMismatchError("germ vector mixes base points")
    acc = TruncatedSeries.zero(base, T)
    for p, g in zip(section.components, germ_vector):
        if p.is_zero():
            continue
        acc = acc + g.truncate(T).multiply_polynomial(p)
    return acc


def pairing_derivative_identity_holds(
    section: PolySection,
    system: DifferentialSystem,
    germ_vector,
    derivation: DerivationField | None = None,
) -> bool:
    """Exact check of N (d/dz <P,f>) = <D(P), f> up to truncation slack."""
    der = derivation or DerivationField.minimal_for(system)
    lhs = pair(section, germ_vector).derivative().multiply_polynomial(der.multiplier)
    rhs = pair(dual_derivative(section, system, der), germ_vector)
    T = min(lhs.truncation_order, rhs.truncation_order)
    return lhs.truncate(T) == rhs.truncate(T)
