# ABOUTME: Monte Carlo estimates of E log log(d X) for X = max(V, 1/V) against their closed-form brackets
# ABOUTME: Covers weighted sums of log-Gaussians and the single Gaussian case

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from binomial_roots.prob.distributions import TAU, DistributionKit
from binomial_roots.prob.montecarlo import exceedance_counts, monte_carlo_mean, wilson_interval
from binomial_roots.prob.tails import E_SQUARED, TailExperimentConfig, TailRow
from binomial_roots.utils.errors import ScaleTooSmallError

logger = logging.getLogger(__name__)

SQRT_8_OVER_PI = math.sqrt(8 / math.pi)


@dataclass(frozen=True)
class LogLogEstimate:
    estimate: float
    std_error: float
    ci: tuple[float, float]
    lower_bound: float
    upper_bound: float
    samples: int
    seed: int

    @property
    def inside_bounds(self) -> bool:
        """The confidence interval overlaps the bracket widened by three standard errors."""
        slack = 3 * self.std_error
        return self.ci[1] >= self.lower_bound - slack and self.ci[0] <= self.upper_bound + slack


def loglog_upper_bound(d: float, a_norm: float) -> float:
    return math.log(math.log(d / math.e)) + 2 + math.log(2) + math.log(1 + TAU * a_norm)


def loglog_expectation(cfg: TailExperimentConfig) -> LogLogEstimate:
    """E[log log(d X_a)] with X_a = max(V_a, 1/V_a), V_a = exp(W_a).

    log(d X_a) = log d + |W_a|, so each draw contributes log(log d + |W_a|).

    Raises:
        WeightSumNonzeroError: the weights do not sum to zero.
        ScaleTooSmallError: d < e^2.
    """
    cfg.require_zero_sum()
    cfg.require_scale()
    log_d = math.log(cfg.d)
    lower = math.log(log_d)
    upper = loglog_upper_bound(cfg.d, cfg.l2)

    if cfg.l2 == 0:
        return LogLogEstimate(lower, 0.0, (lower, lower), lower, upper, cfg.samples, cfg.seed)

    weights = cfg.array
    mc = monte_carlo_mean(
        lambda rng, size: np.log(log_d + np.abs(DistributionKit.sample_weighted_w(rng, weights, size))),
        cfg.samples,
        cfg.seed,
        cfg.workers,
    )
    result = LogLogEstimate(mc.estimate, mc.std_error, mc.ci, lower, upper, mc.samples, mc.seed)
    if not result.inside_bounds:
        logger.warning(f"E log log(dX) = {mc.estimate:.4f} falls outside [{lower:.4f}, {upper:.4f}]")
    return result


def loglog_single_gaussian(d: float, samples: int = 100_000, seed: int = 0, workers: int = 1) -> LogLogEstimate:
    """E[log log(d max(|Z|, 1/|Z|))] with bracket [log log d, log 2 + log log(d/e) + sqrt(8/pi)].

    Raises:
        ScaleTooSmallError: d < e^2.
    """
    if d < E_SQUARED * (1 - 1e-12):
        raise ScaleTooSmallError(f"Scale d must be at least e^2, got {d}.")
    log_d = math.log(d)
    lower = math.log(log_d)
    upper = math.log(2) + math.log(math.log(d / math.e)) + SQRT_8_OVER_PI
    mc = monte_carlo_mean(
        lambda rng, size: np.log(log_d + np.abs(DistributionKit.sample_y(rng, size))), samples, seed, workers
    )
    return LogLogEstimate(mc.estimate, mc.std_error, mc.ci, lower, upper, mc.samples, mc.seed)


def single_gaussian_tail_check(
    t_grid: Sequence[float] = (0.5, 1.0, 1.5, 2.0), samples: int = 100_000, seed: int = 0, workers: int = 1
) -> list[TailRow]:
    """Empirical P(log log(e X) >= t) for X = max(|Z|, 1/|Z|) against sqrt(8/pi) exp(-(e^t - 1))."""
    counts, total = exceedance_counts(
        lambda rng, size: np.log1p(np.abs(DistributionKit.sample_y(rng, size))), t_grid, samples, seed, workers
    )
    rows = []
    for t, k in zip(t_grid, counts):
        lo, hi = wilson_interval(int(k), total)
        bound = SQRT_8_OVER_PI * math.exp(-(math.exp(t) - 1))
        rows.append(TailRow(t=float(t), probability=int(k) / total, ci_lo=lo, ci_hi=hi, samples=total, bound=bound))
    return rows
