# ABOUTME: Quadrature and Monte Carlo checks of the log-Gaussian constants, moments and tail bounds
# ABOUTME: Experiments are seeded and reported as CSV rows with their estimates and brackets

from .distributions import A_CLOSED_FORM, TAU, TAU2_CLOSED_FORM, DistributionKit
from .loglog import LogLogEstimate, loglog_expectation, loglog_single_gaussian, single_gaussian_tail_check
from .montecarlo import (
    MonteCarloEstimate,
    constant_a_monte_carlo,
    mean_w_monte_carlo,
    variance_tau2_monte_carlo,
    wilson_interval,
)
from .quadrature import (
    constant_a,
    density_normalization,
    laplace_moment_ratio,
    moment_ratio_W,
    moment_theta,
    variance_tau2,
)
from .report import EXPERIMENTS, ExperimentRow, run_experiment, write_experiment_csv
from .tails import (
    RearrangedNorms,
    TailExperimentConfig,
    TailFit,
    TailRow,
    fit_tail_curve,
    logconcave_tail_check,
    moment_bracket_check,
    rearranged_norms,
    sample_unit_direction,
    tail_linear_combination,
)

__all__ = [
    "A_CLOSED_FORM",
    "EXPERIMENTS",
    "TAU",
    "TAU2_CLOSED_FORM",
    "DistributionKit",
    "ExperimentRow",
    "LogLogEstimate",
    "MonteCarloEstimate",
    "RearrangedNorms",
    "TailExperimentConfig",
    "TailFit",
    "TailRow",
    "constant_a",
    "constant_a_monte_carlo",
    "density_normalization",
    "fit_tail_curve",
    "laplace_moment_ratio",
    "logconcave_tail_check",
    "loglog_expectation",
    "loglog_single_gaussian",
    "mean_w_monte_carlo",
    "moment_bracket_check",
    "moment_ratio_W",
    "moment_theta",
    "rearranged_norms",
    "run_experiment",
    "sample_unit_direction",
    "single_gaussian_tail_check",
    "tail_linear_combination",
    "variance_tau2",
    "wilson_interval",
]
