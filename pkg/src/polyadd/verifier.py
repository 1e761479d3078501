"""Sampling checks for region additivity of |psi^(i)(e^x)| and the inequalities behind it.

Throughout, ``F(t) = |psi^(i)(e^t)|`` and the deficit is
``f(x, y) = |psi^(i)(x)| + |psi^(i)(y)| - |psi^(i)(xy)|`` so that
``F(s) + F(t) - F(s + t) = f(e^s, e^t)``.

Every check returns an :class:`AdditivityReport` whose margins are signed
so that a positive margin means the asserted inequality holds. A sample is
a violation when its margin is ``<= -slack``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_CONFIG, EvalConfig
from .errors import DomainError, PreconditionError
from .polygamma_core import MAX_ORDER, abs_polygamma, abs_polygamma_array, polygamma_exp_array
from .threshold import ThresholdResult

DEFAULT_SLACK = 1e-9
BOUNDARY_OFFSET = 1e-3
SUB_UPPER = 5.0
SUPER_LOWER = -20.0
CASE_RANGE = (math.log(1e-2), math.log(1e2))
LIMIT_POINTS = (1e1, 1e2, 1e3, 1e4)
FD_REL_TOL = 1e-5


class Region(str, enum.Enum):
    SUB = "SUB"
    SUPER = "SUPER"
    MIXED = "MIXED"


class Monotonicity(str, enum.Enum):
    INCREASING = "INCREASING"
    DECREASING = "DECREASING"
    NON_MONOTONE = "NON_MONOTONE"


@dataclass(frozen=True)
class SampleSpec:
    """Seeded sampling plan.

    ``log_range`` is the window for the additive variable ``t = ln x``;
    samples are uniform in ``t``. ``None`` selects the region default.
    """

    region: Region
    count: int
    seed: int = 0
    log_range: tuple[float, float] | None = None

    def __post_init__(self):
        object.__setattr__(self, "region", Region(self.region))
        if isinstance(self.count, bool) or not isinstance(self.count, int) or self.count < 1:
            raise DomainError(f"count must be a positive integer, got {self.count!r}")
        if not isinstance(self.seed, int) or not -(2**63) <= self.seed < 2**64:
            raise DomainError(f"seed must be a 64-bit integer, got {self.seed!r}")
        if self.log_range is not None:
            lo, hi = (float(v) for v in self.log_range)
            if not lo < hi:
                raise DomainError(f"log_range must be ordered, got {self.log_range!r}")
            object.__setattr__(self, "log_range", (lo, hi))

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed % 2**64)


@dataclass
class AdditivityReport:
    check: str
    order: int
    region: Region | None
    samples: int
    violations: list[tuple[float, float, float]] = field(default_factory=list)
    worst_margin: float = math.inf
    slack: float = 0.0
    positive: int | None = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self):
        return {
            "check": self.check,
            "order": self.order,
            "region": None if self.region is None else self.region.value,
            "samples": self.samples,
            "violations": [list(v) for v in self.violations],
            "worst_margin": self.worst_margin,
            "slack": self.slack,
            "positive": self.positive,
        }


def _report(check, order, region, xs, ys, margins, slack, assert_=True, positive=None):
    margins = np.asarray(margins, dtype=np.float64)
    bad = margins <= -slack if assert_ else np.zeros(margins.shape, dtype=bool)
    violations = sorted(
        (float(x), float(y), float(m))
        for x, y, m in zip(np.asarray(xs)[bad], np.asarray(ys)[bad], margins[bad])
    )
    worst = float(margins.min()) if margins.size else math.inf
    return AdditivityReport(check, order, region, int(margins.size), violations, worst, slack, positive)


def _check_i(i, top=MAX_ORDER):
    if isinstance(i, bool) or not isinstance(i, (int, np.integer)) or not 1 <= i <= top:
        raise DomainError(f"order must be an integer in [1, {top}], got {i!r}")


# -- proof quantities ---------------------------------------------------------


def deficit(i: int, x: float, y: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """f(x, y) = |psi^(i)(x)| + |psi^(i)(y)| - |psi^(i)(xy)|, symmetric bit-for-bit."""
    a, b = (x, y) if x <= y else (y, x)
    return abs_polygamma(i, a, cfg) + abs_polygamma(i, b, cfg) - abs_polygamma(i, a * b, cfg)


def deficit_array(i: int, xs, ys, cfg: EvalConfig = DEFAULT_CONFIG) -> np.ndarray:
    xs, ys = np.broadcast_arrays(np.asarray(xs, dtype=np.float64), np.asarray(ys, dtype=np.float64))
    a = np.minimum(xs, ys)
    b = np.maximum(xs, ys)
    return (abs_polygamma_array(i, a, cfg) + abs_polygamma_array(i, b, cfg)
            - abs_polygamma_array(i, a * b, cfg))


def partial_x(i: int, x: float, y: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """df/dx = y|psi^(i+1)(xy)| - |psi^(i+1)(x)|."""
    _check_i(i, MAX_ORDER - 1)
    return y * abs_polygamma(i + 1, x * y, cfg) - abs_polygamma(i + 1, x, cfg)


def partial_x_array(i: int, xs, ys, cfg: EvalConfig = DEFAULT_CONFIG) -> np.ndarray:
    _check_i(i, MAX_ORDER - 1)
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    return ys * abs_polygamma_array(i + 1, xs * ys, cfg) - abs_polygamma_array(i + 1, xs, cfg)


def log_grid(n: int = 100, lo: float = 1e-2, hi: float = 1e2) -> np.ndarray:
    return np.logspace(math.log10(lo), math.log10(hi), n)


def _power_abs_parts(i, alpha, xs, cfg):
    # x^alpha |psi^(i)(x)| = x^(alpha-i-1) i!  +  x^alpha |psi^(i)(x+1)|
    xs = np.asarray(xs, dtype=np.float64)
    return (xs ** (alpha - i - 1) * float(math.factorial(i)),
            xs ** alpha * abs_polygamma_array(i, xs + 1.0, cfg))


def scaled_power_abs(i: int, alpha: float, xs, cfg: EvalConfig = DEFAULT_CONFIG) -> np.ndarray:
    """x^alpha |psi^(i)(x)|, with the pole term i!/x^(i+1) split off before scaling."""
    pole, regular = _power_abs_parts(i, alpha, xs, cfg)
    return pole + regular


def scaled_power_steps(i: int, alpha: float, xs, cfg: EvalConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Consecutive differences of x^alpha |psi^(i)(x)| along ``xs``.

    The two parts are differenced separately; differencing their sum would
    lose the small-x increments to the constant i! when alpha = i + 1.
    """
    pole, regular = _power_abs_parts(i, alpha, xs, cfg)
    return np.diff(pole) + np.diff(regular)


def _classify(steps):
    if np.all(steps > 0):
        return Monotonicity.INCREASING
    if np.all(steps < 0):
        return Monotonicity.DECREASING
    return Monotonicity.NON_MONOTONE


def check_monotone_alpha(i: int, alpha: float, grid, cfg: EvalConfig = DEFAULT_CONFIG) -> Monotonicity:
    """Classify x^alpha |psi^(i)(x)| on an increasing grid.

    The grid needs at least 50 points and must cover [1e-2, 1e2].
    """
    _check_i(i)
    grid = np.asarray(grid, dtype=np.float64)
    if grid.ndim != 1 or grid.size < 50:
        raise PreconditionError("grid needs at least 50 points")
    if not np.all(np.diff(grid) > 0) or grid[0] <= 0:
        raise PreconditionError("grid must be positive and strictly increasing")
    if grid[0] > 1e-2 * (1 + 1e-12) or grid[-1] < 1e2 * (1 - 1e-12):
        raise PreconditionError("grid must span at least [1e-2, 1e2]")
    return _classify(scaled_power_steps(i, alpha, grid, cfg))


def check_limit(i: int, y: float, cfg: EvalConfig = DEFAULT_CONFIG) -> list[float]:
    """f(x, y) at x = 10, 100, 1000, 10000; tends to |psi^(i)(y)|."""
    _check_i(i)
    return [deficit(i, x, y, cfg) for x in LIMIT_POINTS]


def limit_distance(i: int, x: float, y: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """|f(x, y) - |psi^(i)(y)||, computed as ||psi^(i)(x)| - |psi^(i)(xy)||.

    Subtracting from the deficit directly runs out of digits once the
    distance drops below an ulp of |psi^(i)(y)|.
    """
    return abs(abs_polygamma(i, x, cfg) - abs_polygamma(i, x * y, cfg))


# -- sampling -----------------------------------------------------------------


def _uniform(rng, lo, hi, n):
    return rng.uniform(lo, hi, n)


def region_bounds(theta: ThresholdResult) -> tuple[float, float]:
    """(ln of widened lower bracket, ln of widened upper bracket).

    The bracket is widened by 10 bracket-widths so no sample can straddle
    the true root.
    """
    pad = 10.0 * (theta.hi - theta.lo)
    return math.log(theta.lo - pad), math.log(theta.hi + pad)


def default_log_range(region: Region, theta: ThresholdResult) -> tuple[float, float]:
    ln_lo, ln_hi = region_bounds(theta)
    if region is Region.SUPER:
        return SUPER_LOWER, ln_lo - BOUNDARY_OFFSET
    return ln_hi + BOUNDARY_OFFSET, SUB_UPPER


def draw_pairs(spec: SampleSpec, theta: ThresholdResult) -> tuple[np.ndarray, np.ndarray]:
    """Draw ``spec.count`` pairs (s, t) in the additive variable.

    SUB pairs also satisfy the closure condition s + t > ln(theta).
    MIXED pairs take s from the SUB window and t from the SUPER window.
    """
    ln_lo, ln_hi = region_bounds(theta)
    rng = spec.rng()
    n = spec.count
    if spec.region is Region.MIXED:
        lo_s, hi_s = default_log_range(Region.SUB, theta)
        lo_t, hi_t = default_log_range(Region.SUPER, theta)
        return _uniform(rng, lo_s, hi_s, n), _uniform(rng, lo_t, hi_t, n)

    lo, hi = spec.log_range or default_log_range(spec.region, theta)
    if spec.region is Region.SUPER:
        if hi >= ln_lo:
            raise PreconditionError(f"SUPER window must lie below ln(theta) ~ {ln_lo:.6g}")
        return _uniform(rng, lo, hi, n), _uniform(rng, lo, hi, n)

    if lo <= ln_hi:
        raise PreconditionError(f"SUB window must lie above ln(theta) ~ {ln_hi:.6g}")
    s_out, t_out = [], []
    have = 0
    while have < n:
        s = _uniform(rng, lo, hi, n)
        t = _uniform(rng, lo, hi, n)
        keep = s + t > ln_hi
        s_out.append(s[keep])
        t_out.append(t[keep])
        have += int(keep.sum())
    return np.concatenate(s_out)[:n], np.concatenate(t_out)[:n]


def check_additivity(i: int, theta: ThresholdResult, samples: SampleSpec,
                     cfg: EvalConfig = DEFAULT_CONFIG, slack: float = DEFAULT_SLACK) -> AdditivityReport:
    """Test F(s + t) <= F(s) + F(t) (SUB) or its reverse (SUPER) on seeded samples.

    Margins are relative: ``(F(s) + F(t) - F(s + t)) / (F(s) + F(t))``,
    negated for SUPER. MIXED samples are only summarised; ``positive``
    counts the pairs with a positive deficit.
    """
    _check_i(i)
    if theta.order != i:
        raise PreconditionError(f"threshold is for order {theta.order}, not {i}")
    if not theta.certified:
        raise PreconditionError("threshold bracket is not certified")
    s, t = draw_pairs(samples, theta)
    fs = polygamma_exp_array(i, s, cfg)
    ft = polygamma_exp_array(i, t, cfg)
    fst = polygamma_exp_array(i, s + t, cfg)
    rel = (fs + ft - fst) / (fs + ft)
    region = samples.region
    if region is Region.MIXED:
        return _report("additivity", i, region, s, t, rel, slack, assert_=False,
                       positive=int(np.count_nonzero(rel > 0)))
    margins = rel if region is Region.SUB else -rel
    return _report("additivity", i, region, s, t, margins, slack)


def boundary_defect(i: int, theta: ThresholdResult, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """F(2 ln m) - 2 F(ln m) at the bracket midpoint m, i.e. minus the gap there."""
    m = theta.mid
    return abs_polygamma(i, m * m, cfg) - 2.0 * abs_polygamma(i, m, cfg)


def check_case_inequalities(i: int, samples: SampleSpec, cfg: EvalConfig = DEFAULT_CONFIG,
                            slack: float = DEFAULT_SLACK) -> AdditivityReport:
    """Check the four bounds on f(x, y) for y < 1 used in the proof.

    1. x > 1:      |psi(1)| < f(x, y) < |psi(y)|
    2. x < 1:      f(x, y) < |psi(1)|
    3. y < x < 1:  f(y, y) < f(x, y)
    4. x < y < 1:  f(x, x) < f(x, y)

    ``x`` is drawn from ``samples.log_range`` (default ln 1e-2 .. ln 1e2) and
    ``y`` from the part of it below 0. ``samples.region`` is not used.
    Margins are divided by |psi(x)| + |psi(y)|.
    """
    _check_i(i)
    lo, hi = samples.log_range or CASE_RANGE
    if lo >= 0:
        raise PreconditionError("the case inequalities need samples with y < 1")
    rng = samples.rng()
    x = np.exp(_uniform(rng, lo, hi, samples.count))
    y = np.exp(_uniform(rng, lo, min(hi, 0.0), samples.count))
    y = np.minimum(y, np.nextafter(1.0, 0.0))

    px = abs_polygamma_array(i, x, cfg)
    py = abs_polygamma_array(i, y, cfg)
    p1 = abs_polygamma(i, 1.0, cfg)
    f = deficit_array(i, x, y, cfg)
    scale = px + py
    margins = np.full(x.shape, np.inf)

    above = x > 1
    m1 = np.minimum(f - p1, py - f) / scale
    margins = np.where(above, np.minimum(margins, m1), margins)
    below = x < 1
    margins = np.where(below, np.minimum(margins, (p1 - f) / scale), margins)
    c3 = (y < x) & below
    if c3.any():
        fyy = deficit_array(i, y[c3], y[c3], cfg)
        margins[c3] = np.minimum(margins[c3], (f[c3] - fyy) / scale[c3])
    c4 = x < y
    if c4.any():
        fxx = deficit_array(i, x[c4], x[c4], cfg)
        margins[c4] = np.minimum(margins[c4], (f[c4] - fxx) / scale[c4])
    return _report("case_inequalities", i, None, x, y, margins, slack)


def _xy_pairs(rng, n, x_range, y_range, exclude_one=0.0):
    x = np.exp(_uniform(rng, *x_range, n))
    y = np.exp(_uniform(rng, *y_range, n))
    if exclude_one > 0:
        bad = np.abs(y - 1.0) <= exclude_one
        while bad.any():
            y[bad] = np.exp(_uniform(rng, *y_range, int(bad.sum())))
            bad = np.abs(y - 1.0) <= exclude_one
    return x, y


_WIDE = (math.log(1e-2), math.log(1e2))


def check_derivative_sign(i: int, count: int, seed: int = 0,
                          cfg: EvalConfig = DEFAULT_CONFIG) -> AdditivityReport:
    """sign(df/dx) = sign(1 - y) on x, y log-uniform in (1e-2, 1e2), |y - 1| > 1e-6.

    Margin is ``sign(1 - y) * df/dx / |psi^(i+1)(x)|``.
    """
    _check_i(i, MAX_ORDER - 1)
    rng = SampleSpec(Region.SUB, count, seed).rng()
    x, y = _xy_pairs(rng, count, _WIDE, _WIDE, exclude_one=1e-6)
    d = partial_x_array(i, x, y, cfg)
    margins = np.sign(1.0 - y) * d / abs_polygamma_array(i + 1, x, cfg)
    return _report("derivative_sign", i, None, x, y, margins, 0.0)


def fd_partial_x(i: int, xs, ys, cfg: EvalConfig = DEFAULT_CONFIG, rel_step: float = 1e-3) -> np.ndarray:
    """Five-point central difference of the deficit in x.

    The x-independent term |psi^(i)(y)| is dropped before differencing; it
    cancels exactly in the quotient but its rounding error does not.
    """
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    h = xs * rel_step

    def f(c):
        u = xs + c * h
        return abs_polygamma_array(i, u, cfg) - abs_polygamma_array(i, u * ys, cfg)

    return (8.0 * (f(1) - f(-1)) - (f(2) - f(-2))) / (12.0 * h)


def check_derivative_fd(i: int, count: int, seed: int = 0, cfg: EvalConfig = DEFAULT_CONFIG,
                        tol: float = FD_REL_TOL) -> AdditivityReport:
    """Closed-form df/dx against finite differences where |df/dx| > 1e-8.

    Margin is ``tol - relative error``.
    """
    _check_i(i, MAX_ORDER - 1)
    rng = SampleSpec(Region.SUB, count, seed).rng()
    x, y = _xy_pairs(rng, count, _WIDE, _WIDE, exclude_one=1e-6)
    d = partial_x_array(i, x, y, cfg)
    keep = np.abs(d) > 1e-8
    x, y, d = x[keep], y[keep], d[keep]
    rel = np.abs(fd_partial_x(i, x, y, cfg) - d) / np.abs(d)
    return _report("derivative_fd", i, None, x, y, tol - rel, 0.0)


def check_positivity(i: int, count: int, seed: int = 0,
                     cfg: EvalConfig = DEFAULT_CONFIG) -> AdditivityReport:
    """f(x, y) > 0 for y in (1, 100), x in (1e-2, 100). Margin is f / (|psi(x)| + |psi(y)|)."""
    _check_i(i)
    rng = SampleSpec(Region.SUB, count, seed).rng()
    x, y = _xy_pairs(rng, count, _WIDE, (0.0, math.log(1e2)))
    y = np.maximum(y, np.nextafter(1.0, 2.0))
    f = deficit_array(i, x, y, cfg)
    margins = f / (abs_polygamma_array(i, x, cfg) + abs_polygamma_array(i, y, cfg))
    return _report("positivity_y_gt_1", i, None, x, y, margins, 0.0)


def check_limit_report(i: int, ys=(0.5, 2.0), cfg: EvalConfig = DEFAULT_CONFIG) -> AdditivityReport:
    """|f(x, y) - |psi^(i)(y)|| must shrink along x = 10, 100, 1000, 10000.

    Distances come from :func:`limit_distance`.

    Each consecutive pair gives one margin ``(d_prev - d_next) / d_prev``.
    """
    _check_i(i)
    xs, yv, margins = [], [], []
    for y in ys:
        d = [limit_distance(i, x, y, cfg) for x in LIMIT_POINTS]
        for x_next, a, b in zip(LIMIT_POINTS[1:], d, d[1:]):
            xs.append(x_next)
            yv.append(y)
            margins.append((a - b) / a if a > 0 else -1.0)
    return _report("limit", i, None, np.array(xs), np.array(yv), margins, 0.0)


def monotone_expectations(i: int) -> list[tuple[float, Monotonicity]]:
    """alpha values with their expected monotonicity class."""
    return [
        (float(i - 1), Monotonicity.DECREASING),
        (float(i), Monotonicity.DECREASING),
        (i + 0.5, Monotonicity.NON_MONOTONE),
        (float(i + 1), Monotonicity.INCREASING),
        (float(i + 2), Monotonicity.INCREASING),
    ]


def check_monotone_report(i: int, grid=None, cfg: EvalConfig = DEFAULT_CONFIG) -> AdditivityReport:
    """Monotonicity check for each alpha in :func:`monotone_expectations`.

    Margin per alpha: the smallest relative step in the expected direction
    (for NON_MONOTONE, the smaller of the largest rise and largest fall).
    Violation triples are ``(alpha, x_at_failure, margin)``.
    """
    _check_i(i)
    grid = log_grid() if grid is None else np.asarray(grid, dtype=np.float64)
    alphas, where, margins = [], [], []
    for alpha, expected in monotone_expectations(i):
        v = scaled_power_abs(i, alpha, grid, cfg)
        rel = scaled_power_steps(i, alpha, grid, cfg) / np.abs(v[:-1])
        if expected is Monotonicity.INCREASING:
            j = int(np.argmin(rel))
            m = rel[j]
        elif expected is Monotonicity.DECREASING:
            j = int(np.argmax(rel))
            m = -rel[j]
        else:
            j = int(np.argmin(np.abs(rel)))
            m = min(rel.max(), -rel.min())
        got = check_monotone_alpha(i, alpha, grid, cfg)
        if got is not expected and m > 0:
            m = -abs(m)
        alphas.append(alpha)
        where.append(grid[j])
        margins.append(m)
    return _report("monotone_alpha", i, None, alphas, where, margins, 0.0)
