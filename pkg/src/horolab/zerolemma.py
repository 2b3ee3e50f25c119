"""Derivative towers, exact rank over Q(z), and vanishing-order bounds.

Given a polynomial section P and a system Y' = A Y, the tower
P, D(P), D(P)^2, ... spans (over Q(z)) the smallest derivation-stable
module containing P.  Its rank r caps how fast the pairing <P, f>
against a horizontal germ f can vanish: ord_Q <P, f> <= x * r + C for
sections of degree x, with C measured here rather than derived.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .connection import (
    DerivationField,
    DifferentialSystem,
    PolySection,
    derivative_tower,
    pair,
)
from .errors import (
    BoundTooSmallError,
    InputFormatError,
    InsufficientTruncationError,
    SingularPointError,
)
from .exact import Polynomial, TruncatedSeries
from .parallel import map_ordered

SATURATED = "saturated-at-T"


def vanishing_order(series: TruncatedSeries):
    """Index of the first non-zero coefficient; None when all T+1 vanish."""
    return series.order()


def _order_label(order):
    return SATURATED if order is None else order


# --- exact polynomial-matrix linear algebra -----------------------------------


def polynomial_matrix_rank(rows):
    """Rank over Q(z) of a matrix of polynomials.

    Fraction-free (Bareiss) elimination: every division is exact in
    Q[z], so no rational-function arithmetic and no spurious rank
    decisions from pivot growth.
    """
    rank, _ = _bareiss_rank_and_pivots(rows)
    return rank


def _bareiss_rank_and_pivots(rows):
    work = [[_as_polynomial(entry) for entry in row] for row in rows]
    if not work:
        return 0, []
    ncols = len(work[0])
    prev = Polynomial.one()
    pivot_cols = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(work)):
            if not work[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        pivot = work[r][c]
        for i in range(r + 1, len(work)):
            for j in range(c + 1, ncols):
                numerator = pivot * work[i][j] - work[i][c] * work[r][j]
                quotient, remainder = numerator.divmod(prev)
                if not remainder.is_zero():
                    raise ArithmeticError("fraction-free elimination lost exactness")
                work[i][j] = quotient
            work[i][c] = Polynomial.zero()
        prev = pivot
        pivot_cols.append(c)
        r += 1
        if r == len(work):
            break
    return r, pivot_cols


def _as_polynomial(entry):
    if isinstance(entry, Polynomial):
        return entry
    return Polynomial.constant(entry)


def polynomial_determinant(rows) -> Polynomial:
    """Exact determinant of a square polynomial matrix (cofactor expansion)."""
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise InputFormatError("determinant requires a square matrix")
    work = [[_as_polynomial(entry) for entry in row] for row in rows]
    return _det_recursive(work)


def _det_recursive(rows):
    n = len(rows)
    if n == 0:
        return Polynomial.one()
    if n == 1:
        return rows[0][0]
    acc = Polynomial.zero()
    for j in range(n):
        entry = rows[0][j]
        if entry.is_zero():
            continue
        minor = [
            [rows[i][k] for k in range(n) if k != j] for i in range(1, n)
        ]
        term = entry * _det_recursive(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def _fraction_determinant(rows) -> Fraction:
    """Determinant of a square Fraction matrix by exact elimination."""
    n = len(rows)
    work = [list(row) for row in rows]
    det = Fraction(1)
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if work[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            work[c], work[pivot_row] = work[pivot_row], work[c]
            det = -det
        pivot = work[c][c]
        det *= pivot
        for i in range(c + 1, n):
            factor = work[i][c] / pivot
            if factor == 0:
                continue
            work[i] = [a - factor * b for a, b in zip(work[i], work[c])]
    return det


# --- tower analysis ------------------------------------------------------------


@dataclass(frozen=True)
class TowerAnalysis:
    """Exact rank data for the derivative tower of one section."""

    tower: tuple
    rank: int
    wronskian: Polynomial
    minimal_submodule_basis: tuple
    pairings: tuple | None = None
    pairing_orders: tuple | None = None
    ord_drop_holds: bool | None = None

    def to_json(self):
        data = {
            "rank": self.rank,
            "tower_length": len(self.tower),
            "wronskian": self.wronskian.to_str(),
            "wronskian_degree": self.wronskian.degree(),
        }
        if self.pairing_orders is not None:
            data["pairing_orders"] = [_order_label(o) for o in self.pairing_orders]
            data["ord_drop_holds"] = self.ord_drop_holds
        return data


def _ord_drop_holds(orders, truncations):
    """ord(F_{i+1}) >= ord(F_i) - 1 with saturated orders read as >= T+1."""
    for i in range(len(orders) - 1):
        lower = (truncations[i] + 1) if orders[i] is None else orders[i]
        nxt = (truncations[i + 1] + 1) if orders[i + 1] is None else orders[i + 1]
        if nxt < lower - 1:
            return False
    return True


def analyze_tower(
    section: PolySection,
    system: DifferentialSystem,
    germs=None,
    derivation: DerivationField | None = None,
):
    """Build the tower to one past the system rank and measure its span.

    When solution germs are supplied, the pairings F_i = <D^i(P), f> and
    their vanishing orders are recorded and the one-step order-drop
    property is checked on them.
    """
    if section.is_zero():
        raise InputFormatError("cannot analyze the tower of the zero section")
    m = system.rank
    if germs is not None:
        x = max(component.degree() for component in section.components)
        needed = m * (x + 2)
        low = min(g.truncation_order for g in germs)
        if low < needed:
            raise InsufficientTruncationError(
                "germ truncation too small for tower analysis",
                truncation=low,
                required=needed,
            )
    tower = tuple(derivative_tower(section, system, m, derivation))
    matrix = [list(sec.components) for sec in tower]
    rank, pivot_cols = _bareiss_rank_and_pivots(matrix)
    for i in range(len(tower)):
        prefix_rank = polynomial_matrix_rank(matrix[: i + 1])
        if prefix_rank != min(i + 1, rank):
            raise ArithmeticError(
                "tower rank failed to stabilize after first dependence"
            )
    wronskian = polynomial_determinant(
        [[matrix[i][c] for c in pivot_cols] for i in range(rank)]
    )
    pairings = None
    orders = None
    drop = None
    if germs is not None:
        pairings = tuple(pair(sec, germs) for sec in tower)
        orders = tuple(f.order() for f in pairings)
        drop = _ord_drop_holds(orders, [f.truncation_order for f in pairings])
    return TowerAnalysis(
        tower=tower,
        rank=rank,
        wronskian=wronskian,
        minimal_submodule_basis=tower[:rank],
        pairings=pairings,
        pairing_orders=orders,
        ord_drop_holds=drop,
    )


# --- the measured zero-lemma constant ------------------------------------------


@dataclass(frozen=True)
class ZeroLemmaReport:
    """ord_Q <P, f> against the x * rank budget; measured_C is the excess."""

    x: int
    rank: int
    ord_q: int
    measured_c: int
    ord_drop_holds: bool

    def to_json(self):
        return {
            "x": self.x,
            "rank": self.rank,
            "ord_q": self.ord_q,
            "measured_c": self.measured_c,
            "ord_drop_holds": self.ord_drop_holds,
        }


def zero_lemma_check(
    section: PolySection,
    system: DifferentialSystem,
    germs,
    x: int | None = None,
    derivation: DerivationField | None = None,
) -> ZeroLemmaReport:
    """Measure ord_Q <P, f> - x * rank on one section."""
    if x is None:
        x = section.degree_bound
    if x is None:
        x = max(component.degree() for component in section.components)
    analysis = analyze_tower(section, system, germs=germs, derivation=derivation)
    ord_q = analysis.pairing_orders[0]
    if ord_q is None:
        raise InsufficientTruncationError(
            "pairing vanishes through the whole truncation window",
            truncation=analysis.pairings[0].truncation_order,
        )
    return ZeroLemmaReport(
        x=x,
        rank=analysis.rank,
        ord_q=ord_q,
        measured_c=ord_q - x * analysis.rank,
        ord_drop_holds=bool(analysis.ord_drop_holds),
    )


def zero_lemma_family_csv_rows(reports):
    """CSV rows (header first) for a family of reports indexed by degree."""
    yield ("x", "ord", "rank", "measured_C")
    for report in reports:
        yield (report.x, report.ord_q, report.rank, report.measured_c)


# --- Cramer identity ------------------------------------------------------------


def cramer_identity_holds(analysis: TowerAnalysis, germs) -> bool:
    """det(M) f_k = sum_i cofactor_{ik} F_i as truncated series, all k.

    M is the square tower matrix (first m rows).  This ties the exact
    minors to the pairings and must hold identically whenever the tower
    reaches full rank.
    """
    m = len(germs)
    if analysis.rank != m:
        raise InputFormatError(
            "Cramer identity needs a full-rank tower",
            rank=analysis.rank,
            required=m,
        )
    rows = [list(analysis.tower[i].components) for i in range(m)]
    det = polynomial_determinant(rows)
    pairings = [pair(analysis.tower[i], germs) for i in range(m)]
    for k in range(m):
        lhs = germs[k].multiply_polynomial(det)
        rhs = None
        for i in range(m):
            minor_rows = [
                [rows[a][b] for b in range(m) if b != k]
                for a in range(m)
                if a != i
            ]
            cofactor = polynomial_determinant(minor_rows)
            if (i + k) % 2 == 1:
                cofactor = -cofactor
            term = pairings[i].multiply_polynomial(cofactor)
            rhs = term if rhs is None else rhs + term
        common = min(lhs.truncation_order, rhs.truncation_order)
        if lhs.truncate(common) != rhs.truncate(common):
            return False
    return True


# --- non-vanishing wedge search --------------------------------------------------


@dataclass(frozen=True)
class WedgeWitness:
    """Least index set whose tower minor is non-zero at the probe point."""

    indices: tuple
    minor_value: Fraction
    point: Fraction

    def to_json(self):
        return {
            "indices": list(self.indices),
            "minor_value": str(self.minor_value),
            "point": str(self.point),
        }


def nonvanishing_wedge_indices(
    section: PolySection,
    system: DifferentialSystem,
    point,
    bound: int,
    derivation: DerivationField | None = None,
) -> WedgeWitness:
    """Lexicographically least l_1 < ... < l_m <= bound with minor(point) != 0."""
    if section.is_zero():
        raise InputFormatError("cannot search the tower of the zero section")
    q = Fraction(point)
    if system.is_singular_at(q):
        raise SingularPointError("wedge probe point is a pole of the system", point=q)
    m = system.rank
    if bound + 1 < m:
        raise BoundTooSmallError(
            "tower bound leaves fewer rows than the system rank",
            bound=bound,
            rank=m,
        )
    tower = derivative_tower(section, system, bound, derivation)
    if polynomial_matrix_rank([list(sec.components) for sec in tower]) < m:
        raise BoundTooSmallError(
            "tower never reaches full rank, no non-vanishing wedge exists",
            bound=bound,
            rank=m,
        )
    evaluated = [
        [component(q) for component in sec.components] for sec in tower
    ]

    def minor_at(indices):
        return _fraction_determinant([evaluated[i] for i in indices])

    candidates = list(combinations(range(bound + 1), m))
    chunk = 64
    for start in range(0, len(candidates), chunk):
        block = candidates[start : start + chunk]
        for indices, value in zip(block, map_ordered(minor_at, block)):
            if value != 0:
                return WedgeWitness(indices=indices, minor_value=value, point=q)
    raise BoundTooSmallError(
        "every tower minor vanishes at the probe point up to the bound",
        bound=bound,
        point=q,
    )
