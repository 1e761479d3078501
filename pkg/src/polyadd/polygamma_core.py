"""Fast double-precision digamma and polygamma functions for x > 0.

Small arguments are pushed upward with the recurrence
``|psi^(k)(x)| = k!/x^(k+1) + |psi^(k)(x+1)|`` (shift terms accumulated with
compensated summation) until they pass ``EvalConfig.shift_for(k)``; the
remainder comes from the Bernoulli asymptotic series.
"""

from __future__ import annotations

import math
import sys
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .bernoulli import bernoulli_even_exact
from .config import DEFAULT_CONFIG, EvalConfig
from .errors import DomainError, PolygammaOverflowError
from .kernels import polygamma_impl

MAX_ORDER = 12
_LOG_MAX = math.log(sys.float_info.max)
_LOG_MIN_NORMAL = math.log(sys.float_info.min)


@lru_cache(maxsize=None)
def _digamma_coef(nterms):
    b = bernoulli_even_exact(nterms)
    return np.array([float(b[j] / (2 * j + 2)) for j in range(nterms)])


@lru_cache(maxsize=None)
def _polygamma_coef(k, nterms):
    # |psi^(k)(z)| ~ z^-k [(k-1)! + k!/(2z) + sum_j B_2j (2j+k-1)!/(2j)! z^-2j]
    b = bernoulli_even_exact(nterms)
    coef = np.array([
        float(b[j - 1] * Fraction(math.factorial(2 * j + k - 1), math.factorial(2 * j)))
        for j in range(1, nterms + 1)
    ])
    return float(math.factorial(k)), float(math.factorial(k - 1)), math.factorial(k) / 2.0, coef


def _check_x(x):
    if isinstance(x, bool) or not isinstance(x, (int, float, np.floating, np.integer)):
        raise DomainError(f"x must be a real number, got {x!r}")
    x = float(x)
    if not (x > 0 and math.isfinite(x)):
        raise DomainError(f"x must be finite and > 0, got {x!r}")
    return x


def _check_order(k, lowest=1):
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or not lowest <= k <= MAX_ORDER:
        raise DomainError(f"order must be an integer in [{lowest}, {MAX_ORDER}], got {k!r}")
    return int(k)


def _leading_overflows(k, x):
    return math.lgamma(k + 1) - (k + 1) * math.log(x) >= _LOG_MAX - 1.0


def digamma(x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """psi(x) = Gamma'(x)/Gamma(x) for x > 0.

    >>> digamma(1.0)
    -0.5772156649015329
    """
    x = _check_x(x)
    coef = _digamma_coef(cfg.asymptotic_terms)
    return polygamma_impl.digamma_kernel(x, cfg.shift_for(0), coef, cfg.asymptotic_terms, cfg.rel_tol)


def abs_polygamma(k: int, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """|psi^(k)(x)| = k! zeta(k+1, x) for k >= 1, x > 0.

    Raises
    ------
    DomainError
        If ``x <= 0`` or ``k`` is outside ``[1, 12]``.
    PolygammaOverflowError
        If the value exceeds the double range.
    """
    k = _check_order(k)
    x = _check_x(x)
    if _leading_overflows(k, x):
        raise PolygammaOverflowError(k, x)
    fact, lead0, lead1, coef = _polygamma_coef(k, cfg.asymptotic_terms)
    v = polygamma_impl.polygamma_abs_kernel(
        k, x, cfg.shift_for(k), fact, lead0, lead1, coef, cfg.asymptotic_terms, cfg.rel_tol
    )
    if not math.isfinite(v):
        raise PolygammaOverflowError(k, x)
    return v


def polygamma(k: int, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Signed psi^(k)(x); sign is (-1)^(k+1) for k >= 1. ``k = 0`` gives digamma."""
    if k == 0 and not isinstance(k, bool):
        return digamma(x, cfg)
    v = abs_polygamma(k, x, cfg)
    return v if k % 2 == 1 else -v


def polygamma_exp(k: int, t: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """|psi^(k)(e^t)|."""
    if isinstance(t, bool) or not isinstance(t, (int, float, np.floating, np.integer)) or math.isnan(t):
        raise DomainError(f"t must be a real number, got {t!r}")
    if not _LOG_MIN_NORMAL <= t < _LOG_MAX:
        raise DomainError(f"e^t is not a positive normal double for t={t!r}")
    return abs_polygamma(k, math.exp(t), cfg)


def abs_polygamma_array(k: int, xs, cfg: EvalConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Vectorised :func:`abs_polygamma` over an array of arguments."""
    k = _check_order(k)
    xs = np.asarray(xs, dtype=np.float64)
    if xs.size and not (np.all(xs > 0) and np.all(np.isfinite(xs))):
        bad = xs[~((xs > 0) & np.isfinite(xs))].flat[0]
        raise DomainError(f"x must be finite and > 0, got {float(bad)!r}")
    if xs.size:
        xmin = float(xs.min())
        if _leading_overflows(k, xmin):
            raise PolygammaOverflowError(k, xmin)
    fact, lead0, lead1, coef = _polygamma_coef(k, cfg.asymptotic_terms)
    out = polygamma_impl.polygamma_abs_array(
        k, xs, cfg.shift_for(k), fact, lead0, lead1, coef, cfg.asymptotic_terms, cfg.rel_tol
    )
    if not np.all(np.isfinite(out)):
        raise PolygammaOverflowError(k, float(xs[~np.isfinite(out)].flat[0]))
    return out


def polygamma_exp_array(k: int, ts, cfg: EvalConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Vectorised :func:`polygamma_exp`."""
    ts = np.asarray(ts, dtype=np.float64)
    if ts.size and not (np.all(ts >= _LOG_MIN_NORMAL) and np.all(ts < _LOG_MAX)):
        raise DomainError("e^t is not a positive normal double for some t")
    return abs_polygamma_array(k, np.exp(ts), cfg)
