"""Additivity thresholds: the root in (0, 1) of 2|psi^(i)(t)| = |psi^(i)(t^2)|."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

from .config import DEFAULT_CONFIG, EvalConfig
from .errors import DomainError, PolygammaOverflowError, SolverError
from .oracle import oracle_gap
from .polygamma_core import MAX_ORDER, abs_polygamma

CERTIFY_DIGITS = 30
MAX_HALVINGS = 1000


@dataclass(frozen=True)
class ThresholdResult:
    """Bracket ``[lo, hi]`` around the threshold for one order.

    ``residual`` is the fast-path gap at the midpoint. ``certified`` is set
    only when the oracle confirms gap(lo) < 0 < gap(hi) beyond its error
    bound.
    """

    order: int
    lo: float
    hi: float
    residual: float
    certified: bool
    iterations: int

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def as_dict(self):
        return asdict(self)


def gap(i: int, theta: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """2|psi^(i)(theta)| - |psi^(i)(theta^2)|, the diagonal of the deficit.

    Returns ``-inf`` when either term overflows: for small theta the
    leading terms give 2 i!/theta^(i+1) - i!/theta^(2i+2) < 0.
    """
    if not (isinstance(theta, (int, float)) and 0 < theta <= 1):
        raise DomainError(f"theta must lie in (0, 1], got {theta!r}")
    try:
        return 2.0 * abs_polygamma(i, theta, cfg) - abs_polygamma(i, theta * theta, cfg)
    except PolygammaOverflowError:
        return -math.inf


def _check_order(i):
    if isinstance(i, bool) or not isinstance(i, int) or not 1 <= i <= MAX_ORDER:
        raise DomainError(f"order must be an integer in [1, {MAX_ORDER}], got {i!r}")


def certify(i: int, lo: float, hi: float, digits: int = CERTIFY_DIGITS) -> bool:
    """True when the oracle proves gap(lo) < 0 < gap(hi)."""
    g_lo = oracle_gap(i, lo, digits)
    g_hi = oracle_gap(i, hi, digits)
    return (g_lo.value + g_lo.tail + g_lo.abs_error_bound < 0
            and g_hi.value + g_hi.tail - g_hi.abs_error_bound > 0)


def solve_theta(i: int, tol: float = 1e-12, cfg: EvalConfig = DEFAULT_CONFIG) -> ThresholdResult:
    """Bisect for the threshold of order ``i`` until the bracket is narrower than ``tol``.

    The starting bracket is ``[t, 2t]`` where ``t`` is the first of
    0.5, 0.25, ... with a negative gap; gap(1) = |psi^(i)(1)| > 0 bounds
    the search from above. Bisection stops early if the bracket can no
    longer be split in floating point.
    """
    _check_order(i)
    if not 1e-15 <= tol <= 1e-3:
        raise DomainError(f"tol must lie in [1e-15, 1e-3], got {tol!r}")

    hi = 1.0
    if not gap(i, hi, cfg) > 0:
        raise SolverError("gap(1) is not positive", order=i)
    lo = 0.5
    for _ in range(MAX_HALVINGS):
        if gap(i, lo, cfg) < 0:
            break
        hi, lo = lo, 0.5 * lo
        if lo == 0.0:
            break
    else:
        lo = 0.0
    if lo == 0.0:
        raise SolverError("bracket search exhausted the floating-point range", order=i)

    iterations = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if gap(i, mid, cfg) < 0:
            lo = mid
        else:
            hi = mid
        iterations += 1
    if hi - lo > tol:
        raise SolverError(f"bracket width {hi - lo:.3g} cannot reach tol={tol:.3g}", order=i)

    residual = gap(i, 0.5 * (lo + hi), cfg)
    return ThresholdResult(i, lo, hi, residual, certify(i, lo, hi), iterations)


def theta_table(i_max: int, tol: float = 1e-12, cfg: EvalConfig = DEFAULT_CONFIG,
                workers: int | None = None) -> list[ThresholdResult]:
    """Thresholds for orders 1..i_max, in order.

    Raises :class:`SolverError` naming the order that failed or came back
    uncertified.
    """
    if isinstance(i_max, bool) or not isinstance(i_max, int) or not 1 <= i_max <= MAX_ORDER:
        raise DomainError(f"i_max must be an integer in [1, {MAX_ORDER}], got {i_max!r}")

    def one(i):
        try:
            r = solve_theta(i, tol, cfg)
        except SolverError:
            raise
        except (DomainError, ArithmeticError) as exc:
            raise SolverError(str(exc), order=i) from exc
        if not r.certified:
            raise SolverError("oracle could not certify the bracket", order=i)
        return r

    orders = range(1, i_max + 1)
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, orders))
    return [one(i) for i in orders]
