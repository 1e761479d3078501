"""Polygamma functions and the additivity thresholds of |psi^(i)(e^x)|."""

from .bernoulli import bernoulli_even
from .config import EvalConfig
from .errors import (
    DomainError,
    PolyaddError,
    PolygammaOverflowError,
    PreconditionError,
    SolverError,
)
from .kernels import BACKEND
from .oracle import OracleValue, oracle_gap, oracle_polygamma
from .polygamma_core import (
    abs_polygamma,
    abs_polygamma_array,
    digamma,
    polygamma,
    polygamma_exp,
    polygamma_exp_array,
)
from .threshold import ThresholdResult, gap, solve_theta, theta_table
from .verifier import (
    AdditivityReport,
    Monotonicity,
    Region,
    SampleSpec,
    check_additivity,
    check_case_inequalities,
    check_limit,
    check_monotone_alpha,
    deficit,
    partial_x,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "AdditivityReport", "DomainError", "EvalConfig", "Monotonicity", "OracleValue",
    "PolyaddError", "PolygammaOverflowError", "PreconditionError", "Region", "SampleSpec",
    "SolverError", "ThresholdResult", "abs_polygamma", "abs_polygamma_array", "bernoulli_even",
    "check_additivity", "check_case_inequalities", "check_limit", "check_monotone_alpha",
    "deficit", "digamma", "gap", "oracle_gap", "oracle_polygamma", "partial_x", "polygamma",
    "polygamma_exp", "polygamma_exp_array", "solve_theta", "theta_table",
]
