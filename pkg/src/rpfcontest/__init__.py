"""Success functions for contests with a continuum of participants.

Winning in these contests means clearing a performance threshold: effort
maps to a random performance level, and the threshold adjusts to the
population's effort distribution so that exactly a fraction k of the
population wins.  The package solves that market-clearing threshold,
evaluates the induced success function, falsifies candidate success
functions against the structural axioms that characterize this class,
computes symmetric equilibria and optimal prize structures, and validates
the continuum predictions with a finite-population simulation.
"""

from .distributions import Logistic, Normal, NoiseDistribution, Shifted, StudentT, Tabulated
from .engine import (
    AdditiveFamily,
    CutoffResult,
    WarpedFamily,
    clearing_residual,
    csf_eval,
    log_warped,
    recover_translation,
    solve_cutoff,
    validate_family,
)
from .errors import (
    BudgetNotBindingError,
    ContestError,
    DomainError,
    InputFormatError,
    NumericalError,
    UnsupportedOperationError,
)
from .measures import DensitySegment, EffortMeasure, dirac

__all__ = [
    "AdditiveFamily",
    "BudgetNotBindingError",
    "ContestError",
    "CutoffResult",
    "DensitySegment",
    "DomainError",
    "EffortMeasure",
    "InputFormatError",
    "Logistic",
    "NoiseDistribution",
    "Normal",
    "NumericalError",
    "Shifted",
    "StudentT",
    "Tabulated",
    "UnsupportedOperationError",
    "WarpedFamily",
    "clearing_residual",
    "csf_eval",
    "dirac",
    "log_warped",
    "recover_translation",
    "solve_cutoff",
    "validate_family",
]

__version__ = "0.1.0"
