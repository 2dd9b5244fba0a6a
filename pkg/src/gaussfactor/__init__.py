"""Gauss-sum factorization at integer and rational arguments."""

__version__ = "0.1.0"

from gaussfactor.errors import GaussFactorError, InvalidArgumentError, RangeError
from gaussfactor.rational import ReducedFraction, grid, phase_mod, reduce
from gaussfactor.kernel import (
    TruncationPolicy,
    WeightProfile,
    continuous_sum,
    exponential_sum,
    g_value,
    random_phase_sum,
    standard_sum,
    truncated_sum,
    truncated_sum_profile,
)
from gaussfactor.strategies import (
    DegeneracyProfile,
    FactorReport,
    PeakRecord,
    SpectrumSample,
    degeneracy_profile,
    detect_periods,
    ghost_analysis,
    integer_scan,
    rational_search,
    required_m,
    scaling_experiment,
)

__all__ = [
    "__version__",
    "GaussFactorError",
    "InvalidArgumentError",
    "RangeError",
    "ReducedFraction",
    "reduce",
    "phase_mod",
    "grid",
    "TruncationPolicy",
    "WeightProfile",
    "truncated_sum",
    "truncated_sum_profile",
    "standard_sum",
    "g_value",
    "continuous_sum",
    "exponential_sum",
    "random_phase_sum",
    "SpectrumSample",
    "PeakRecord",
    "FactorReport",
    "DegeneracyProfile",
    "integer_scan",
    "required_m",
    "rational_search",
    "degeneracy_profile",
    "detect_periods",
    "ghost_analysis",
    "scaling_experiment",
]
