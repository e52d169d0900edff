"""Robust L-estimation of central moments on kernel pseudo-samples.

The kth central moment has an unbiased symmetric kernel in k variables;
evaluating it over all k-subsets of a sample and applying an L-estimator
(trimmed mean, median, or a custom weighting) to the sorted values yields
robust, tunable-breakdown estimates of central and standardized moments.
This package provides the kernel machinery, exact and Monte Carlo
pseudo-sample construction, the estimators themselves, parametric families
with a quantile-average congruence analyzer, and a simulation harness that
checks the distributional claims behind the construction.
"""

from .errors import (
    ArgumentError,
    CapacityError,
    CombinationOverflowError,
    ConfigurationError,
    ContractViolationError,
    DegenerateSampleError,
    DegenerateTrimError,
    EstimatorError,
    UnsupportedOrderError,
)
from .kernels import (
    MAX_ORDER,
    boundary_kernel_value,
    central_moment_kernel,
    kernel_support_bounds,
    kernel_values,
    signed_binomial_sums,
)
from .lstat import (
    LEstimatorSpec,
    TrimSpec,
    apply_lestimator,
    breakdown_from_trim,
    median_sorted,
    retained_window,
    trim_from_breakdown,
    trimmed_mean,
)
from .pseudosample import (
    DEFAULT_BUDGET,
    ExactPlan,
    MonteCarloPlan,
    build_pseudosample,
    count_combinations,
    rank_combination,
    unrank_combination,
)
from .estimators import (
    MomentEstimate,
    h_statistic,
    hl_central_moment,
    hl_standardized_moment,
    sample_central_moment,
    trimmed_sd_pairwise,
    trimmed_sd_symmetric,
)
from .distributions import (
    CongruenceVerdict,
    Family,
    Gamma,
    GeneralizedGaussian,
    LogNormal,
    Pareto,
    Uniform,
    Weibull,
    congruence_check,
    laplace,
    lognormal_qa_sigma_derivative,
    normal,
    parse_family,
    qa_partial_sign,
    quantile_average,
)
from .verify import (
    EquivarianceReport,
    McConsistencyReport,
    ShapeProbe,
    SupportBoundsReport,
    VarianceComparison,
    equivariance_suite,
    kernel_shape_probe,
    mc_consistency_probe,
    pairwise_diff_probe,
    report_from_dict,
    support_bound_probe,
    variance_comparison,
)

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "CapacityError",
    "CombinationOverflowError",
    "ConfigurationError",
    "ContractViolationError",
    "DegenerateSampleError",
    "DegenerateTrimError",
    "EstimatorError",
    "UnsupportedOrderError",
    "MAX_ORDER",
    "boundary_kernel_value",
    "central_moment_kernel",
    "kernel_support_bounds",
    "kernel_values",
    "signed_binomial_sums",
    "LEstimatorSpec",
    "TrimSpec",
    "apply_lestimator",
    "breakdown_from_trim",
    "median_sorted",
    "retained_window",
    "trim_from_breakdown",
    "trimmed_mean",
    "DEFAULT_BUDGET",
    "ExactPlan",
    "MonteCarloPlan",
    "build_pseudosample",
    "count_combinations",
    "rank_combination",
    "unrank_combination",
    "MomentEstimate",
    "h_statistic",
    "hl_central_moment",
    "hl_standardized_moment",
    "sample_central_moment",
    "trimmed_sd_pairwise",
    "trimmed_sd_symmetric",
    "CongruenceVerdict",
    "Family",
    "Gamma",
    "GeneralizedGaussian",
    "LogNormal",
    "Pareto",
    "Uniform",
    "Weibull",
    "congruence_check",
    "laplace",
    "lognormal_qa_sigma_derivative",
    "normal",
    "parse_family",
    "qa_partial_sign",
    "quantile_average",
    "EquivarianceReport",
    "McConsistencyReport",
    "ShapeProbe",
    "SupportBoundsReport",
    "VarianceComparison",
    "equivariance_suite",
    "kernel_shape_probe",
    "mc_consistency_probe",
    "pairwise_diff_probe",
    "report_from_dict",
    "support_bound_probe",
    "variance_comparison",
]
