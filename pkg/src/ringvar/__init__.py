"""Translation-invariant variance and uncertainty bounds on a periodic domain.

The package verifies, at machine precision and over seeded random ensembles,
the chain of identities and inequalities obeyed by the shifted-second-moment
variance of periodic quantum states, and estimates the sharp constant of the
resulting product bound by variational search.
"""

from ._kernels import backend as kernel_backend
from .domain import PeriodicDomain, WaveFunction, density_at, interpolate, translate
from .ensembles import (
    EnsembleSpec,
    band_limited_random,
    fourier_ansatz,
    make_states,
    momentum_eigenstate,
    wrapped_gaussian,
)
from .momentum import MomentumStats, momentum_stats, momentum_stats_fd
from .search import (
    OracleResult,
    SearchConfig,
    SearchResult,
    objective,
    random_search,
    search,
)
from .variance import (
    VarianceProfile,
    branch_mean,
    branch_variance,
    second_moment,
    second_moment_curvature,
    second_moment_slope,
    variance_profile,
)
from .verify import (
    AngularReport,
    UncertaintyReport,
    angular_case_report,
    check_structural_bounds,
    pointwise_bound_margins,
    uncertainty_report,
    verify_eup,
    verify_pointwise_bound,
)

__version__ = "0.1.0"

__all__ = [
    "AngularReport",
    "EnsembleSpec",
    "MomentumStats",
    "OracleResult",
    "PeriodicDomain",
    "SearchConfig",
    "SearchResult",
    "UncertaintyReport",
    "VarianceProfile",
    "WaveFunction",
    "angular_case_report",
    "band_limited_random",
    "branch_mean",
    "branch_variance",
    "check_structural_bounds",
    "density_at",
    "fourier_ansatz",
    "interpolate",
    "kernel_backend",
    "make_states",
    "momentum_eigenstate",
    "momentum_stats",
    "momentum_stats_fd",
    "objective",
    "pointwise_bound_margins",
    "random_search",
    "search",
    "second_moment",
    "second_moment_curvature",
    "second_moment_slope",
    "translate",
    "uncertainty_report",
    "variance_profile",
    "verify_eup",
    "verify_pointwise_bound",
    "wrapped_gaussian",
]
