"""Eigenvalue solvers for the PT-symmetric Hamiltonians H = p^2 + (ix)^a |x|^b."""
from .errors import GammaPoleError, NumericalFailure, PreconditionError
from .exact import complex_roots_exact, contour_grid, real_roots_exact, secular_exact
from .records import EigenvalueRecord, PotentialParams
from .shoot import ShootConfig, find_real_eigenvalues, secular_shoot
from .specfun import gamma_ratio, log_gamma
from .survey import count_real, monotonicity_report, sweep
from .wkb import decay_exponent, wkb_estimate

__version__ = "0.1.0"

__all__ = [
    "EigenvalueRecord", "GammaPoleError", "NumericalFailure", "PotentialParams", "PreconditionError",
    "ShootConfig", "complex_roots_exact", "contour_grid", "count_real", "decay_exponent",
    "find_real_eigenvalues", "gamma_ratio", "log_gamma", "monotonicity_report", "real_roots_exact",
    "secular_exact", "secular_shoot", "sweep", "wkb_estimate",
]
