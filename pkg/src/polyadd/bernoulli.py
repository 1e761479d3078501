"""Even-index Bernoulli numbers, computed exactly and cached."""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb

from .errors import DomainError

MAX_N = 60

_lock = threading.Lock()
_exact: tuple[Fraction, ...] | None = None
_floats: tuple[float, ...] | None = None


def _compute_exact(n_max):
    # sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1, B_0 = 1
    b = [Fraction(1)]
    for m in range(1, 2 * n_max + 1):
        if m > 1 and m % 2 == 1:
            b.append(Fraction(0))
            continue
        acc = sum(comb(m + 1, j) * b[j] for j in range(m) if b[j])
        b.append(-acc / (m + 1))
    return tuple(b[2 * j] for j in range(1, n_max + 1))


def _table():
    global _exact, _floats
    if _floats is None:
        with _lock:
            if _floats is None:
                exact = _compute_exact(MAX_N)
                _exact = exact
                _floats = tuple(float(v) for v in exact)
    return _exact, _floats


def bernoulli_even_exact(n: int) -> tuple[Fraction, ...]:
    """Exact B_2, B_4, ..., B_2n as fractions."""
    _check(n)
    return _table()[0][:n]


def bernoulli_even(n: int) -> list[float]:
    """B_2, B_4, ..., B_2n as floats (exact rationals rounded once).

    >>> bernoulli_even(2)
    [0.16666666666666666, -0.03333333333333333]
    """
    _check(n)
    return list(_table()[1][:n])


def _check(n):
    if isinstance(n, bool) or not isinstance(n, int) or not 1 <= n <= MAX_N:
        raise DomainError(f"n must be an integer in [1, {MAX_N}], got {n!r}")
