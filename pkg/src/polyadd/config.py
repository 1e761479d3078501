"""Evaluation knobs for the fast polygamma path."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .errors import DomainError

RELTOL_ENV = "POLYADD_RELTOL"


@dataclass(frozen=True)
class EvalConfig:
    """Precision and strategy settings for :mod:`polyadd.polygamma`.

    Parameters
    ----------
    shift_target : float or None
        Arguments are shifted upward by the recurrence until they reach this
        value, then the asymptotic series takes over. ``None`` means
        ``16 + k`` for order ``k``.
    asymptotic_terms : int
        Maximum number of Bernoulli terms in the asymptotic series.
    rel_tol : float
        Target relative accuracy; the series stops early once a term falls
        below ``1e-3 * rel_tol`` of the running sum.
    """

    shift_target: float | None = None
    asymptotic_terms: int = 12
    rel_tol: float = 1e-13

    def __post_init__(self):
        if self.shift_target is not None and not self.shift_target >= 2:
            raise DomainError(f"shift_target must be >= 2, got {self.shift_target!r}")
        if not 4 <= self.asymptotic_terms <= 60:
            raise DomainError(f"asymptotic_terms must be in [4, 60], got {self.asymptotic_terms!r}")
        if not 0 < self.rel_tol < 1e-6:
            raise DomainError(f"rel_tol must be in (0, 1e-6), got {self.rel_tol!r}")

    def shift_for(self, k: int) -> float:
        return float(16 + k) if self.shift_target is None else float(self.shift_target)

    def with_rel_tol(self, rel_tol: float) -> "EvalConfig":
        return replace(self, rel_tol=rel_tol)

    @classmethod
    def from_env(cls, environ=None) -> "EvalConfig":
        """Default config, with ``rel_tol`` taken from ``POLYADD_RELTOL`` if set."""
        environ = os.environ if environ is None else environ
        raw = environ.get(RELTOL_ENV)
        if raw is None or raw.strip() == "":
            return cls()
        try:
            value = float(raw)
        except ValueError:
            raise DomainError(f"{RELTOL_ENV}={raw!r} is not a number") from None
        return cls(rel_tol=value)


DEFAULT_CONFIG = EvalConfig()
