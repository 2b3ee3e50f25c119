"""Small-height auxiliary sections by exact linear algebra.

Given germ vectors f at finitely many points, a degree budget x and a
target vanishing order nu, the constructor solves the homogeneous linear
system "<P, f> vanishes to order nu at every point" exactly over Q,
clears denominators, and picks the smallest-height integer kernel vector
(LLL-assisted when the kernel has dimension above one).  The classical
count: s*nu constraints against m*(x+1) unknown coefficients, so
s*nu <= m*(x+1) - 1 guarantees a non-zero solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .connection import PolySection, pair
from .errors import (
    InsufficientTruncationError,
    NoDataError,
    OverConstrainedError,
    PairingMismatchError,
)
from .exact import Polynomial
from .lattice import lll_reduce, primitive_integer_vector, rational_kernel_basis
from .parallel import map_ordered


class VanishingProblem:
    """Vanishing constraints: germ vectors at points, degree x, order nu."""

    def __init__(self, germs_at_points, degree: int, order: int):
        # germs_at_points: iterable of (point, germ_vector)
        pts = []
        for point, germ in germs_at_points:
            germ = tuple(germ)
            if not germ:
                raise NoDataError("empty germ vector")
            base = germ[0].base
            if Fraction(point) != base:
                raise PairingMismatchError(
                    "germ base point disagrees with the stated point",
                    point=str(point),
                    base=str(base),
                )
            pts.append((base, germ))
        if not pts:
            raise NoDataError("a vanishing problem needs at least one point")
        m = len(pts[0][1])
        for _, germ in pts:
            if len(germ) != m:
                raise PairingMismatchError("germ vectors of unequal length")
        if degree < 0 or order < 1:
            raise NoDataError("need degree >= 0 and order >= 1")
        s = len(pts)
        if s * order > m * (degree + 1) - 1:
            raise OverConstrainedError(
                "constraint count must stay below the unknown count",
                constraints=s * order,
                unknowns=m * (degree + 1),
            )
        needed = order + degree + 2
        for _, germ in pts:
            for comp in germ:
                if comp.truncation_order < needed:
                    raise InsufficientTruncationError(
                        "germ truncation too small for post-hoc order checks",
                        have=comp.truncation_order,
                        need=needed,
                    )
        self.points = tuple(pts)
        self.rank = m
        self.degree = degree
        self.order = order

    @classmethod
    def default_order(cls, rank: int, degree: int, points: int) -> int:
        """Largest order leaving one spare kernel dimension."""
        return (rank * (degree + 1) - 1) // points - 1

    @classmethod
    def max_order(cls, rank: int, degree: int, points: int) -> int:
        """Largest admissible order (kernel generically one-dimensional)."""
        return (rank * (degree + 1) - 1) // points


def _constraint_matrix(problem: VanishingProblem):
    """Rows: Taylor coefficient i of <P, f> at each point, i < nu.

    Unknowns are the m*(x+1) coefficients c_{k,d} of P, component-major.
    The coefficient of c_{k,d} in row (p, i) is
    sum_e binom(d, e) p^(d-e) a_k(i-e), e <= min(d, i).
    """
    x = problem.degree
    m = problem.rank
    rows = []
    for p, germ in problem.points:
        powers = [Fraction(1)]
        for _ in range(x):
            powers.append(powers[-1] * p)
        for i in range(problem.order):
            row = []
            for k in range(m):
                a = germ[k].coeffs
                for d in range(x + 1):
                    acc = Fraction(0)
                    for e in range(min(d, i) + 1):
                        acc += math.comb(d, e) * powers[d - e] * a[i - e]
                    row.append(acc)
            rows.append(row)
    return rows


@dataclass(frozen=True)
class ConstructedSection:
    section: PolySection
    degree: int
    order: int
    kernel_dimension: int
    achieved_orders: tuple  # per point: exact order, or None when saturated
    saturated: tuple  # per point: True when <P,f> vanished to full truncation
    height: float
    leading_coefficients: tuple  # per point: Fraction or None

    def to_json(self):
        return {
            "section": self.section.to_json(),
            "degree": self.degree,
            "order": self.order,
            "kernel_dimension": self.kernel_dimension,
            "achieved_orders": list(self.achieved_orders),
            "saturated": list(self.saturated),
            "height": self.height,
            "leading_coefficients": [
                None if c is None else str(c) for c in self.leading_coefficients
            ],
        }


def _lex_normalize(vec):
    """Pick the lexicographically smaller of v and -v."""
    neg = [-v for v in vec]
    return neg if neg < vec else vec


def construct_small_section(problem: VanishingProblem) -> ConstructedSection:
    x = problem.degree
    m = problem.rank
    ncols = m * (x + 1)
    rows = _constraint_matrix(problem)
    kernel = rational_kernel_basis(rows, ncols)
    if not kernel:
        raise OverConstrainedError(
            "constraint matrix has full column rank", constraints=len(rows)
        )
    integer_basis = [primitive_integer_vector(v) for v in kernel]
    if len(integer_basis) > 1:
        integer_basis = lll_reduce(integer_basis)
    candidates = [_lex_normalize(v) for v in integer_basis]

    def vec_height(v):
        biggest = max(abs(c) for c in v)
        return math.log(biggest) if biggest > 1 else 0.0

    best = min(candidates, key=lambda v: (vec_height(v), v))
    section = PolySection(
        [Polynomial(best[k * (x + 1) : (k + 1) * (x + 1)]) for k in range(m)],
        degree_bound=x,
    )
    achieved, saturated, leading = [], [], []
    for p, germ in problem.points:
        series = pair(section, germ)
        order = series.order()
        if order is None:
            achieved.append(None)
            saturated.append(True)
            leading.append(None)
        else:
            if order < problem.order:
                raise OverConstrainedError(
                    "kernel vector fails its own vanishing constraints; "
                    "this is a bug, not an input error",
                    point=str(p),
                    order=order,
                )
            achieved.append(order)
            saturated.append(False)
            leading.append(series.coeff(order))
    return ConstructedSection(
        section=section,
        degree=x,
        order=problem.order,
        kernel_dimension=len(kernel),
        achieved_orders=tuple(achieved),
        saturated=tuple(saturated),
        height=vec_height(best),
        leading_coefficients=tuple(leading),
    )


# --- height profiles ----------------------------------------------------------


@dataclass(frozen=True)
class ProfileRow:
    degree: int
    order: int
    height: float
    ratio: float  # height / (x log x)
    achieved_orders: tuple
    kernel_dimension: int

    def to_json(self):
        return {
            "degree": self.degree,
            "order": self.order,
            "height": self.height,
            "ratio": self.ratio,
            "achieved_orders": list(self.achieved_orders),
            "kernel_dimension": self.kernel_dimension,
        }


@dataclass(frozen=True)
class HeightProfile:
    rows: tuple
    ratio_max: float
    ratio_slope: float  # least-squares slope of ratio against x

    def to_json(self):
        return {
            "rows": [r.to_json() for r in self.rows],
            "ratio_max": self.ratio_max,
            "ratio_slope": self.ratio_slope,
        }

    def csv_rows(self):
        yield ("x", "order", "log_height", "ratio", "achieved_orders")
        for r in self.rows:
            yield (
                r.degree,
                r.order,
                f"{r.height:.12g}",
                f"{r.ratio:.12g}",
                ";".join(str(a) for a in r.achieved_orders),
            )


def height_profile(problem_for_degree, degrees) -> HeightProfile:
    """Construct sections across a degree range and fit the height ratio.

    ``problem_for_degree`` maps x to a VanishingProblem; the profile reports
    height/(x log x) per x, its max, and the least-squares drift in x (flat
    or falling drift is the bounded-height signal).
    """
    degrees = [int(x) for x in degrees]
    if any(x < 2 for x in degrees):
        raise NoDataError("height ratios need x >= 2 so that x log x > 0")

    def one(x):
        problem = problem_for_degree(x)
        built = construct_small_section(problem)
        ratio = built.height / (x * math.log(x))
        return ProfileRow(
            degree=x,
            order=problem.order,
            height=built.height,
            ratio=ratio,
            achieved_orders=built.achieved_orders,
            kernel_dimension=built.kernel_dimension,
        )

    rows = map_ordered(one, degrees)
    xs = np.array([r.degree for r in rows], dtype=float)
    ys = np.array([r.ratio for r in rows], dtype=float)
    slope = float(np.polyfit(xs, ys, 1)[0]) if len(rows) > 1 else 0.0
    return HeightProfile(
        rows=tuple(rows),
        ratio_max=float(max(ys)),
        ratio_slope=slope,
    )
