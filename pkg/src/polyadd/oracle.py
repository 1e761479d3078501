"""Slow reference values of |psi^(k)(x)| = k! * zeta(k+1, x) with error bounds.

The Hurwitz zeta function is summed directly in double-double arithmetic
and the tail is closed with an Euler-Maclaurin correction. Nothing here
depends on :mod:`polyadd.polygamma_core`; the Bernoulli numbers are regenerated
locally from their exact recurrence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import _dd
from .errors import DomainError
from .kernels import oracle_impl

EM_TERMS = 4
MIN_DIRECT_TERMS = 50
MAX_RECIPROCAL_TERMS = 10_000
DEFAULT_DIGITS = 25


@dataclass(frozen=True)
class OracleValue:
    """Reference value with a rigorous absolute error bound.

    ``value + tail`` is the double-double result and lies within
    ``abs_error_bound`` of the exact quantity. ``value`` alone is that
    result rounded to the nearest double.
    """

    value: float
    abs_error_bound: float
    tail: float = 0.0

    def as_fraction(self) -> Fraction:
        return Fraction(self.value) + Fraction(self.tail)


@lru_cache(maxsize=None)
def _bernoulli_exact(m):
    # B_0..B_m via Akiyama-Tanigawa (B_1 = +1/2 here; only even indices are used)
    out = []
    a = [Fraction(0)] * (m + 1)
    for n in range(m + 1):
        a[n] = Fraction(1, n + 1)
        for j in range(n, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    return tuple(out)


def _rising(s, n):
    r = 1
    for j in range(n):
        r *= s + j
    return r


@lru_cache(maxsize=None)
def _em_coefficients(s):
    b = _bernoulli_exact(2 * EM_TERMS + 2)
    coeffs = [
        _dd.from_fraction(b[2 * j] * _rising(s, 2 * j - 1) / math.factorial(2 * j))
        for j in range(1, EM_TERMS + 1)
    ]
    omitted = abs(b[2 * EM_TERMS + 2]) * _rising(s, 2 * EM_TERMS + 1) / math.factorial(2 * EM_TERMS + 2)
    return tuple(coeffs), float(omitted) * (1 + 1e-12)


def _direct_terms(s, x, digits):
    """Number of direct terms so the Euler-Maclaurin remainder is below 10^-digits relative."""
    _, omitted = _em_coefficients(s)
    n0 = max(MIN_DIRECT_TERMS, min(math.ceil(10.0 / x), MAX_RECIPROCAL_TERMS))
    # remainder <= omitted * a^-(s + 2p + 1) and zeta(s, x) >= x^-s
    p = s + 2 * EM_TERMS + 1
    log_a = (math.log(omitted) + digits * math.log(10.0) + s * math.log(x)) / p
    need = math.ceil(math.exp(log_a) - x) + 1 if log_a < 60 else None
    if need is None or need > 10**8:
        raise DomainError(f"oracle cannot reach {digits} digits at x={x!r}")
    return max(n0, need)


def _hurwitz(s, x_dd, digits):
    """zeta(s, x) for integer s >= 2 and double-double x > 0."""
    x = x_dd[0]
    n = _direct_terms(s, x, digits)
    head = oracle_impl.hurwitz_head(x_dd[0], x_dd[1], s, n)

    coeffs, omitted = _em_coefficients(s)
    a = _dd.add(x_dd, (float(n), 0.0))
    inv = _dd.div((1.0, 0.0), a)
    inv_pow = (1.0, 0.0)
    for _ in range(s - 1):
        inv_pow = _dd.mul(inv_pow, inv)
    # integral a^(1-s)/(s-1) + f(N)/2 + sum_j B_2j/(2j)! (s)_{2j-1} a^{-(s+2j-1)}
    tail = _dd.div(inv_pow, (float(s - 1), 0.0))
    inv_pow = _dd.mul(inv_pow, inv)
    tail = _dd.add(tail, _dd.mul_d(inv_pow, 0.5))
    inv_pow = _dd.mul(inv_pow, inv)
    inv2 = _dd.mul(inv, inv)
    for c in coeffs:
        tail = _dd.add(tail, _dd.mul(c, inv_pow))
        inv_pow = _dd.mul(inv_pow, inv2)

    total = _dd.add(head, tail)
    truncation = omitted * float(a[0]) ** -(s + 2 * EM_TERMS + 1) * (1 + 1e-12)
    # per term: s reciprocal powers and one add; head accumulation; tail ops
    ops = n * (3 + 8 * (s - 1) + 10 + 3 * s) + 3 * n + 16 * (s + 2 * EM_TERMS + 8)
    rounding = 2.0 * ops * _dd.U2 * abs(total[0])
    return total, truncation + rounding


def _check_args(k, x, digits):
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise DomainError(f"order must be an integer >= 1, got {k!r}")
    if isinstance(digits, bool) or not isinstance(digits, int) or not 20 <= digits <= 50:
        raise DomainError(f"digits must be an integer in [20, 50], got {digits!r}")
    if not (isinstance(x, (int, float)) and math.isfinite(x) and x > 0):
        raise DomainError(f"x must be finite and > 0, got {x!r}")


def _oracle_dd(k, x_dd, digits):
    z, bound = _hurwitz(k + 1, x_dd, digits)
    f = float(math.factorial(k))
    v = _dd.mul_d(z, f)
    return v, bound * f * (1 + 1e-15) + 8 * _dd.U2 * abs(v[0])


def oracle_polygamma(k: int, x: float, digits: int = DEFAULT_DIGITS) -> OracleValue:
    """|psi^(k)(x)| evaluated as k! * zeta(k+1, x) in double-double.

    Parameters
    ----------
    k : int
        Derivative order, ``k >= 1``.
    x : float
        Argument, ``x > 0``.
    digits : int
        Truncation target in decimal digits, ``20 <= digits <= 50``. Rounding
        in double-double limits the attainable accuracy to about 31 digits;
        the returned bound accounts for both.
    """
    _check_args(k, x, digits)
    v, bound = _oracle_dd(k, (float(x), 0.0), digits)
    return OracleValue(v[0], bound + 1e-300, v[1])


def oracle_gap(i: int, theta: float, digits: int = DEFAULT_DIGITS) -> OracleValue:
    """2|psi^(i)(theta)| - |psi^(i)(theta^2)| with theta^2 formed exactly.

    The square is carried as a double-double, so the result refers to the
    exact equation at the double ``theta`` rather than to a rounded square.
    """
    _check_args(i, theta, digits)
    if theta > 1:
        raise DomainError(f"theta must lie in (0, 1], got {theta!r}")
    sq = _dd.two_prod(float(theta), float(theta))
    if sq[0] <= 0 or sq[0] < 1e-150:
        raise DomainError(f"theta={theta!r} too small for the oracle")
    a, ea = _oracle_dd(i, (float(theta), 0.0), digits)
    b, eb = _oracle_dd(i, sq, digits)
    g = _dd.sub(_dd.mul_d(a, 2.0), b)
    bound = 2 * ea + eb + 3 * _dd.U2 * (2 * abs(a[0]) + abs(b[0]))
    return OracleValue(g[0], bound * (1 + 1e-12) + 1e-300, g[1])
