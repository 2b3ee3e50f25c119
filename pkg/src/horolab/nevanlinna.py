"""Numerical value distribution on the projective line minus a divisor.

The exhaustion function g_p(z) = log|z-p|^2 - (1/d) sum n_i log|z-q_i|^2
replaces log|z| on the punctured line.  Its level curves carry a natural
probability measure, and integrating log-modulus data over them yields
characteristic, counting, and proximity functions whose first-main-theorem
residual N + m - T stays bounded.

Convention: the ball B(r) is {g_p <= 2 log r}, so that in the model case
(divisor = the point at infinity) B(r) is the disk of radius r and the
fitted order of e^z is 1.  The raw level {g_p <= log r} remains available
behind the ``raw`` flag; under it every fitted order halves.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    IncompleteHypothesesError,
    InputFormatError,
    NoDataError,
    RadiusTooSmallError,
    SingularPointError,
)

_BISECTION_STEPS = 90
_GROW_FACTOR = 1.25
_TINY = 1e-300


class ExhaustionFunction:
    """Closed-form Green-type exhaustion for a center and a divisor.

    The divisor is a list of (point, multiplicity) pairs; the point None
    stands for infinity, which counts toward the total degree but
    contributes no logarithm.
    """

    def __init__(self, center, divisor):
        self.center = complex(center)
        finite = []
        infinity = 0
        for point, multiplicity in divisor:
            if multiplicity <= 0:
                raise InputFormatError("divisor multiplicities must be positive")
            if point is None:
                infinity += multiplicity
                continue
            q = complex(point)
            if q == self.center:
                raise InputFormatError("divisor point coincides with the center")
            finite.append((q, multiplicity))
        self.finite_points = tuple(finite)
        self.infinity_multiplicity = infinity
        self.degree = infinity + sum(m for _, m in finite)
        if self.degree < 1:
            raise InputFormatError("divisor must have positive total degree")

    def value(self, z) -> float:
        z = complex(z)
        if z == self.center:
            raise SingularPointError("exhaustion has a log pole at the center")
        for q, _ in self.finite_points:
            if z == q:
                raise SingularPointError("exhaustion is +infinity on the divisor")
        g = 2.0 * math.log(abs(z - self.center))
        for q, n in self.finite_points:
            g -= (2.0 * n / self.degree) * math.log(abs(z - q))
        return g

    def values(self, zs: np.ndarray) -> np.ndarray:
        g = 2.0 * np.log(np.abs(zs - self.center))
        for q, n in self.finite_points:
            g = g - (2.0 * n / self.degree) * np.log(np.abs(zs - q))
        return g

    def gradient_abs(self, zs: np.ndarray) -> np.ndarray:
        acc = 2.0 / (zs - self.center)
        for q, n in self.finite_points:
            acc = acc - (2.0 * n / self.degree) / (zs - q)
        return np.abs(acc)

    def harmonic_part_at_center(self) -> float:
        h = 0.0
        for q, n in self.finite_points:
            h -= (2.0 * n / self.degree) * math.log(abs(self.center - q))
        return h

    def level_for(self, r: float, raw: bool = False) -> float:
        if r <= 0:
            raise InputFormatError("radius must be positive")
        return (1.0 if raw else 2.0) * math.log(r)

    def _scale(self) -> float:
        extent = [1.0, abs(self.center)]
        extent.extend(abs(q) for q, _ in self.finite_points)
        return max(extent)


def mean_value_discrepancy(exh: ExhaustionFunction, z0, radius=0.01, n=64) -> float:
    """|circle average of g - g(z0)|: zero for harmonic g."""
    thetas = np.arange(n) * (2.0 * math.pi / n)
    circle = complex(z0) + radius * np.exp(1j * thetas)
    return abs(float(np.mean(exh.values(circle))) - exh.value(z0))


# --- level curves ----------------------------------------------------------------


@dataclass(frozen=True)
class LevelCurve:
    """Sampled level set {g_p = level} with its unit-mass boundary measure."""

    r: float
    level: float
    points: np.ndarray
    weights: np.ndarray
    component_count: int

    @property
    def mass(self) -> float:
        return float(np.sum(self.weights))


def _shoot_component(exh, anchor, level, n_samples):
    """Radial root-finding from one anchor; None unless every ray crosses.

    anchor is a finite complex number, or None for the chart at infinity
    (shoot in w = 1/z).  Near the anchor the sign of g - level is known;
    the first sign change along each ray brackets the crossing.  The
    fixed phase offset keeps samples off special directions such as the
    imaginary axis, where zeros of common test maps sit.
    """
    thetas = (np.arange(n_samples) + 0.37) * (2.0 * math.pi / n_samples)
    rays = np.exp(1j * thetas)
    scale = exh._scale()

    if anchor is None:
        def g_at(t):
            return exh.values(1.0 / (t * rays))
    else:
        a = complex(anchor)

        def g_at(t):
            return exh.values(a + t * rays)

    if anchor is not None and anchor == exh.center:
        inner_sign = -1.0
    else:
        inner_sign = 1.0

    t_lo = 1e-12 * scale
    lo_vals = g_at(np.full(n_samples, t_lo))
    for _ in range(60):
        good = inner_sign * (lo_vals - level) > 0
        if bool(np.all(good)):
            break
        t_lo *= 0.1
        if t_lo < 1e-250:
            return None
        lo_vals = g_at(np.full(n_samples, t_lo))
    else:
        return None

    low = np.full(n_samples, t_lo)
    high = low.copy()
    crossed = np.zeros(n_samples, dtype=bool)
    t_cap = 1e15 * scale
    while float(np.max(high)) < t_cap:
        trial = high * _GROW_FACTOR
        vals = g_at(trial)
        flipped = (~crossed) & (inner_sign * (vals - level) <= 0)
        low = np.where(crossed | flipped, low, trial)
        high = np.where(flipped, trial, np.where(crossed, high, trial))
        crossed = crossed | flipped
        if bool(np.all(crossed)):
            break
    if not bool(np.all(crossed)):
        return None

    for _ in range(_BISECTION_STEPS):
        mid = 0.5 * (low + high)
        vals = g_at(mid)
        inside = inner_sign * (vals - level) > 0
        low = np.where(inside, mid, low)
        high = np.where(inside, high, mid)
    t = 0.5 * (low + high)

    if anchor is None:
        points = 1.0 / (t * rays)
    else:
        points = complex(anchor) + t * rays

    residual = float(np.max(np.abs(exh.values(points) - level)))
    if residual > 1e-9 * max(1.0, abs(level)):
        return None

    # adjacent samples must trace one closed curve; a jump between lobes
    # means the component is not star-shaped from this anchor
    gaps = np.abs(np.roll(points, -1) - points)
    if float(np.max(gaps)) > 20.0 * float(np.median(gaps)) + 1e-30:
        return None

    freqs = np.fft.fftfreq(n_samples, d=1.0 / n_samples)
    dz = np.fft.ifft(1j * freqs * np.fft.fft(points))
    arc = np.abs(dz) * (2.0 * math.pi / n_samples)
    weights = exh.gradient_abs(points) * arc / (4.0 * math.pi)

    centroid = complex(np.mean(points))
    shifted = points - centroid
    area = 0.5 * abs(
        float(np.sum(shifted.real * np.roll(shifted.imag, -1)
                     - shifted.imag * np.roll(shifted.real, -1)))
    )
    extent = float(np.mean(np.abs(shifted)))
    return {
        "points": points,
        "weights": weights,
        "centroid": centroid,
        "area": area,
        "extent": extent,
    }


def level_curve(
    exh: ExhaustionFunction, r: float, n_samples: int = 512, raw: bool = False
) -> LevelCurve:
    """Sample {g_p = level} component by component and weight it to mass one."""
    level = exh.level_for(r, raw)
    anchors = [exh.center]
    anchors.extend(q for q, _ in exh.finite_points)
    if exh.infinity_multiplicity > 0:
        anchors.append(None)

    components = []
    for anchor in anchors:
        found = _shoot_component(exh, anchor, level, n_samples)
        if found is None:
            continue
        duplicate = False
        for kept in components:
            size = max(exh._scale(), kept["extent"], found["extent"])
            close = abs(found["centroid"] - kept["centroid"]) <= 1e-6 * size
            same_size = abs(found["area"] - kept["area"]) <= 1e-6 * max(
                1.0, kept["area"]
            )
            if close and same_size:
                duplicate = True
                break
        if not duplicate:
            components.append(found)
    if not components:
        raise RadiusTooSmallError(
            "no level-curve component found at this radius", r=r
        )
    points = np.concatenate([c["points"] for c in components])
    weights = np.concatenate([c["weights"] for c in components])
    mass = float(np.sum(weights))
    if abs(mass - 1.0) > 1e-6:
        raise RadiusTooSmallError(
            "level-set sampling failed the unit-mass check; the level is "
            "too close to a critical value for radial shooting",
            r=r,
            mass=mass,
        )
    return LevelCurve(
        r=r,
        level=level,
        points=points,
        weights=weights,
        component_count=len(components),
    )


# --- analytic maps ----------------------------------------------------------------


class AnalyticMap:
    """A map to the projective line given by stable log-modulus data.

    ``value_array`` may overflow for entire maps of positive order; every
    growth quantity below therefore consumes ``log_modulus_array`` and
    only touches values on samples where the modulus is moderate.
    """

    def __init__(self, name, value_array, log_modulus_array, zeros_minus=None):
        self.name = name
        self.value_array = value_array
        self.log_modulus_array = log_modulus_array
        self._zeros_minus = zeros_minus

    def zeros_minus(self, a, euclidean_bound):
        """Zeros of f - a with |z| <= bound, or None when not enumerable."""
        if self._zeros_minus is None:
            return None
        return self._zeros_minus(complex(a), float(euclidean_bound))


def _log_abs(values: np.ndarray) -> np.ndarray:
    return np.log(np.maximum(np.abs(values), _TINY))


def _exp_zeros(a, bound):
    if a == 0:
        return []
    base = cmath.log(a)
    out = []
    k_max = int((bound + abs(base)) / (2.0 * math.pi)) + 2
    for k in range(-k_max, k_max + 1):
        z = base + 2j * math.pi * k
        if abs(z) <= bound:
            out.append((z, 1))
    return out


def _exp_square_zeros(a, bound):
    if a == 0:
        return []
    base = cmath.log(a)
    out = []
    k_max = int((bound * bound + abs(base)) / (2.0 * math.pi)) + 2
    for k in range(-k_max, k_max + 1):
        w = base + 2j * math.pi * k
        if w == 0:
            if 0 <= bound:
                out.append((0j, 2))
            continue
        root = cmath.sqrt(w)
        for z in (root, -root):
            if abs(z) <= bound:
                out.append((z, 1))
    return out


def builtin_map(name: str, coefficients=None, constant=None) -> AnalyticMap:
    """Built-ins: ``z``, ``exp``, ``exp-square``, ``constant``, ``polynomial``."""
    if name == "z":
        return AnalyticMap(
            "z",
            value_array=lambda zs: zs,
            log_modulus_array=lambda zs: _log_abs(zs),
            zeros_minus=lambda a, bound: [(a, 1)] if abs(a) <= bound else [],
        )
    if name == "exp":
        return AnalyticMap(
            "exp",
            value_array=np.exp,
            log_modulus_array=lambda zs: zs.real,
            zeros_minus=_exp_zeros,
        )
    if name == "exp-square":
        return AnalyticMap(
            "exp-square",
            value_array=lambda zs: np.exp(zs * zs),
            log_modulus_array=lambda zs: (zs * zs).real,
            zeros_minus=_exp_square_zeros,
        )
    if name == "constant":
        c = complex(constant if constant is not None else 1)
        return AnalyticMap(
            "constant",
            value_array=lambda zs: np.full_like(zs, c),
            log_modulus_array=lambda zs: np.full(zs.shape, math.log(max(abs(c), _TINY))),
            zeros_minus=lambda a, bound: [],
        )
    if name == "polynomial":
        if not coefficients:
            raise InputFormatError("polynomial map needs coefficients")
        desc = [complex(c) for c in coefficients][::-1]

        def poly_zeros(a, bound):
            shifted = list(desc)
            shifted[-1] -= a
            if all(c == 0 for c in shifted):
                raise InputFormatError("map is identically the target")
            roots = np.roots(shifted)
            return [(complex(z), 1) for z in roots if abs(z) <= bound]

        return AnalyticMap(
            "polynomial",
            value_array=lambda zs: np.polyval(desc, zs),
            log_modulus_array=lambda zs: _log_abs(np.polyval(desc, zs)),
            zeros_minus=poly_zeros,
        )
    raise InputFormatError(f"unknown built-in map {name!r}")


def map_from_series(series) -> AnalyticMap:
    """Adapter for a truncated series (valid only near its base point)."""
    desc = [complex(c) for c in series.coeffs][::-1]
    base = complex(series.base)

    def value_array(zs):
        return np.polyval(desc, zs - base)

    return AnalyticMap(
        f"series@{series.base}",
        value_array=value_array,
        log_modulus_array=lambda zs: _log_abs(value_array(zs)),
        zeros_minus=None,
    )


# --- growth functionals -------------------------------------------------------------


def _half_log_one_plus_sq(u: np.ndarray) -> np.ndarray:
    """0.5 * log(1 + exp(2u)) computed without overflow."""
    pos = u > 0
    out = np.empty_like(u)
    out[pos] = u[pos] + 0.5 * np.log1p(np.exp(-2.0 * u[pos]))
    out[~pos] = 0.5 * np.log1p(np.exp(2.0 * u[~pos]))
    return out


def _log_abs_minus(f: AnalyticMap, zs: np.ndarray, a: complex) -> np.ndarray:
    u = f.log_modulus_array(zs)
    out = np.array(u, dtype=float, copy=True)
    moderate = u <= 350.0
    if bool(np.any(moderate)):
        vals = f.value_array(zs[moderate])
        out[moderate] = np.log(np.maximum(np.abs(vals - a), _TINY))
    return out


def _characteristic_on(curve: LevelCurve, f: AnalyticMap) -> float:
    u = f.log_modulus_array(curve.points)
    return float(np.sum(curve.weights * _half_log_one_plus_sq(u)))


def _proximity_on(curve: LevelCurve, f: AnalyticMap, a) -> float:
    u = f.log_modulus_array(curve.points)
    integrand = _half_log_one_plus_sq(u) - _log_abs_minus(f, curve.points, complex(a))
    return float(np.sum(curve.weights * integrand))


def characteristic(
    f: AnalyticMap, exh: ExhaustionFunction, r: float,
    n_samples: int = 512, raw: bool = False,
) -> float:
    """T(r) = 0.5 * sum w_k log(1 + |f(z_k)|^2) over the level curve."""
    return _characteristic_on(level_curve(exh, r, n_samples, raw), f)


def proximity(
    f: AnalyticMap, a, exh: ExhaustionFunction, r: float,
    n_samples: int = 512, raw: bool = False,
) -> float:
    """m(r, a) = 0.5 * sum w_k [log(1 + |f|^2) - log|f - a|^2]."""
    return _proximity_on(level_curve(exh, r, n_samples, raw), f, a)


def counting(zeros, exh: ExhaustionFunction, r: float, raw: bool = False) -> float:
    """N(r) = 0.5 * sum over zeros in B(r) of n_z (level - g_p(z)).

    A zero sitting exactly at the center is capped with the harmonic
    part of g_p there, which makes the model case exact.
    """
    level = exh.level_for(r, raw)
    total = 0.0
    for z, multiplicity in zeros:
        z = complex(z)
        if z == exh.center:
            total += multiplicity * (level - exh.harmonic_part_at_center())
            continue
        if any(z == q for q, _ in exh.finite_points):
            continue
        g = exh.value(z)
        if g <= level + 1e-12:
            total += multiplicity * (level - g)
    return 0.5 * total


@dataclass(frozen=True)
class FmtRow:
    r: float
    characteristic: float
    counting: float
    proximity: float

    @property
    def residual(self) -> float:
        return self.counting + self.proximity - self.characteristic


def _zeros_for(f: AnalyticMap, a, exh: ExhaustionFunction, curve: LevelCurve):
    if exh.infinity_multiplicity == 0:
        raise InputFormatError(
            "B(r) is unbounded for a finite divisor; supply zeros explicitly"
        )
    bound = float(np.max(np.abs(curve.points))) * (1.0 + 1e-12)
    listed = f.zeros_minus(a, bound)
    if listed is None:
        raise NoDataError(
            "map cannot enumerate its own zeros; supply them explicitly"
        )
    kept = []
    for z, multiplicity in listed:
        z = complex(z)
        if any(z == q for q, _ in exh.finite_points):
            continue
        if z == exh.center or exh.value(z) <= curve.level + 1e-12:
            kept.append((z, multiplicity))
    return kept


def fmt_residual(
    f: AnalyticMap, a, exh: ExhaustionFunction, r_grid,
    zeros=None, n_samples: int = 512, raw: bool = False,
):
    """Rows (r, T, N, m) with residual N + m - T per grid radius."""
    rows = []
    for r in r_grid:
        curve = level_curve(exh, r, n_samples, raw)
        level_zeros = zeros if zeros is not None else _zeros_for(f, a, exh, curve)
        rows.append(
            FmtRow(
                r=float(r),
                characteristic=_characteristic_on(curve, f),
                counting=counting(level_zeros, exh, r, raw),
                proximity=_proximity_on(curve, f, a),
            )
        )
    return rows


# --- order of growth ---------------------------------------------------------------


@dataclass(frozen=True)
class OrderFit:
    """Least-squares slope of log T against log r on the outer half grid."""

    rho: float
    residual: float
    points_used: int

    def to_json(self):
        return {
            "rho": self.rho,
            "residual": self.residual,
            "points_used": self.points_used,
        }


def growth_order_fit(samples, min_points: int = 8) -> OrderFit:
    """Fit the growth order from (r, T(r)) samples spanning two decades."""
    cleaned = sorted((float(r), float(t)) for r, t in samples if t > 0 and r > 0)
    if len(cleaned) < min_points:
        raise NoDataError(
            "need more positive characteristic samples", points=len(cleaned)
        )
    if cleaned[-1][0] / cleaned[0][0] < 100.0:
        raise NoDataError("radius grid must span at least two decades")
    outer = cleaned[len(cleaned) // 2 :]
    xs = np.log([r for r, _ in outer])
    ys = np.log([t for _, t in outer])
    slope, intercept = np.polyfit(xs, ys, 1)
    fitted = slope * xs + intercept
    residual = float(np.sqrt(np.mean((ys - fitted) ** 2)))
    return OrderFit(rho=float(slope), residual=residual, points_used=len(outer))


@dataclass(frozen=True)
class NevanlinnaReport:
    """FMT table over an r-grid plus the fitted order when the grid allows."""

    map_name: str
    target: complex
    rows: tuple
    order: OrderFit | None
    raw: bool

    def csv_rows(self):
        yield ("r", "T", "N", "m", "residual")
        for row in self.rows:
            yield (
                row.r,
                row.characteristic,
                row.counting,
                row.proximity,
                row.residual,
            )

    def to_json(self):
        data = {
            "map": self.map_name,
            "target": str(self.target),
            "raw_convention": self.raw,
            "rows": [
                {
                    "r": row.r,
                    "characteristic": row.characteristic,
                    "counting": row.counting,
                    "proximity": row.proximity,
                    "residual": row.residual,
                }
                for row in self.rows
            ],
        }
        if self.order is not None:
            data["order"] = self.order.to_json()
        return data


def nevanlinna_report(
    f: AnalyticMap, a, exh: ExhaustionFunction, r_grid,
    zeros=None, n_samples: int = 512, raw: bool = False,
) -> NevanlinnaReport:
    rows = tuple(fmt_residual(f, a, exh, r_grid, zeros, n_samples, raw))
    order = None
    rs = [row.r for row in rows]
    if len(rows) >= 8 and max(rs) / min(rs) >= 100.0:
        order = growth_order_fit([(row.r, row.characteristic) for row in rows])
    return NevanlinnaReport(
        map_name=f.name, target=complex(a), rows=rows, order=order, raw=raw
    )


# --- the two-point estimate -----------------------------------------------------


@dataclass(frozen=True)
class TwoPointReport:
    """Margin of the height-versus-order inequality at r = x^(1/rho)."""

    x: int
    rho: float
    r_used: float
    bound_rhs: float
    log_f_at_second: float
    margin: float
    below_threshold: bool

    def to_json(self):
        return {
            "x": self.x,
            "rho": self.rho,
            "r_used": self.r_used,
            "bound_rhs": self.bound_rhs,
            "log_f_at_second": self.log_f_at_second,
            "margin": self.margin,
            "below_threshold": self.below_threshold,
            "note": ("x below the asymptotic regime, margin indicative only"
                     if self.below_threshold else ""),
        }


def two_point_estimate_check(
    x: int,
    rho: float,
    sup_log_norm=None,
    vanishing_slope=None,
    vanishing_slack=None,
    c1=None,
    c2=None,
    log_f_at_second=None,
) -> TwoPointReport:
    """Check log|F|(p2) <= B - (A x / rho) log x + (b / rho) log x + c2 x
    + (c1 / rho) x log x.

    B = sup_log_norm bounds the section sup-norm, the vanishing order at
    the first point is at least A x - b, and c1, c2 bound the height
    growth; all five must be supplied.
    """
    required = {
        "sup_log_norm": sup_log_norm,
        "vanishing_slope": vanishing_slope,
        "vanishing_slack": vanishing_slack,
        "c1": c1,
        "c2": c2,
        "log_f_at_second": log_f_at_second,
    }
    missing = [name for name, v in required.items() if v is None]
    if missing:
        raise IncompleteHypothesesError("hypothesis bounds missing", missing=missing)
    if x < 1:
        raise InputFormatError("x must be a positive integer")
    if rho <= 0:
        raise InputFormatError("rho must be positive")
    log_x = math.log(x) if x > 1 else 0.0
    rhs = (
        sup_log_norm
        - (vanishing_slope * x / rho) * log_x
        + (vanishing_slack / rho) * log_x
        + c2 * x
        + (c1 / rho) * x * log_x
    )
    return TwoPointReport(
        x=x,
        rho=rho,
        r_used=x ** (1.0 / rho),
        bound_rhs=rhs,
        log_f_at_second=float(log_f_at_second),
        margin=rhs - float(log_f_at_second),
        below_threshold=x < 4,
    )


def series_log_abs(series, point) -> float:
    """log |F(point)| from exact evaluation of a truncated series."""
    from fractions import Fraction

    point = Fraction(point)
    acc = Fraction(0)
    power = Fraction(1)
    step = point - series.base
    for c in series.coeffs:
        acc += c * power
        power *= step
    if acc == 0:
        raise NoDataError("series evaluates to zero at the point")
    return math.log(abs(acc))
