"""Exception types raised across the package."""

import math


class PolyaddError(Exception):
    """Base class for all package errors."""


class DomainError(PolyaddError, ValueError):
    """Argument outside the supported domain (x <= 0, bad order, ...)."""


class PolygammaOverflowError(PolyaddError, OverflowError):
    """|psi^(k)(x)| does not fit in a double.

    ``log10_leading`` is log10 of the dominant term k!/x^(k+1), which is
    what makes the value unrepresentable.
    """

    def __init__(self, k, x):
        self.k = k
        self.x = x
        self.log10_leading = (math.lgamma(k + 1) - (k + 1) * math.log(x)) / math.log(10)
        super().__init__(
            f"|psi^({k})({x!r})| overflows: leading term k!/x^(k+1) ~ 1e{self.log10_leading:.1f}"
        )


class PreconditionError(PolyaddError, ValueError):
    """An input violates an operation's precondition (e.g. uncertified threshold)."""


class SolverError(PolyaddError, RuntimeError):
    """Threshold root finding failed."""

    def __init__(self, message, order=None):
        self.order = order
        if order is not None:
            message = f"order {order}: {message}"
        super().__init__(message)
