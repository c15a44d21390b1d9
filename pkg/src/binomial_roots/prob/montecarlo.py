# ABOUTME: Batched Monte Carlo with summable sufficient statistics, normal and Wilson confidence intervals
# ABOUTME: Batches are seeded from a SeedSequence spawn so results do not depend on the worker count

import logging
import math
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from binomial_roots.prob.distributions import A_CLOSED_FORM, DistributionKit

logger = logging.getLogger(__name__)

BATCH_SIZE = 50_000
CONFIDENCE = 0.95


@dataclass(frozen=True)
class SufficientStats:
    count: int = 0
    total: float = 0.0
    total_sq: float = 0.0

    def __add__(self, other: "SufficientStats") -> "SufficientStats":
        return SufficientStats(self.count + other.count, self.total + other.total, self.total_sq + other.total_sq)

    @classmethod
    def of(cls, values: np.ndarray) -> "SufficientStats":
        return cls(int(values.size), float(values.sum()), float(np.square(values).sum()))

    @property
    def mean(self) -> float:
        return self.total / self.count

    @property
    def variance(self) -> float:
        if self.count < 2:
            return 0.0
        return max(0.0, (self.total_sq - self.count * self.mean**2) / (self.count - 1))


@dataclass(frozen=True)
class MonteCarloEstimate:
    estimate: float
    std_error: float
    ci: tuple[float, float]
    samples: int
    seed: int

    def within(self, value: float, n_sigma: float = 3.0) -> bool:
        return abs(self.estimate - value) <= n_sigma * self.std_error


def z_value(confidence: float = CONFIDENCE) -> float:
    return float(norm.ppf(1 - (1 - confidence) / 2))


def batch_sizes(samples: int, batch_size: int = BATCH_SIZE) -> list[int]:
    if samples < 1:
        raise ValueError(f"`samples` must be positive, got {samples}.")
    full, rest = divmod(samples, batch_size)
    return [batch_size] * full + ([rest] if rest else [])


def batch_generators(seed: int, count: int) -> list[np.random.Generator]:
    return [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(count)]


def run_batches(
    task: Callable[[np.random.Generator, int], object], samples: int, seed: int, workers: int = 1
) -> list:
    """Run `task(rng, size)` once per batch; results come back in batch order."""
    sizes = batch_sizes(samples)
    rngs = batch_generators(seed, len(sizes))
    if workers <= 1:
        return [task(rng, size) for rng, size in zip(rngs, sizes)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(task, rngs, sizes))


def monte_carlo_mean(
    sampler: Callable[[np.random.Generator, int], np.ndarray],
    samples: int,
    seed: int,
    workers: int = 1,
    confidence: float = CONFIDENCE,
) -> MonteCarloEstimate:
    """Mean of `sampler` draws with a normal-approximation confidence interval."""
    parts = run_batches(lambda rng, size: SufficientStats.of(sampler(rng, size)), samples, seed, workers)
    stats = sum(parts, SufficientStats())
    std_error = math.sqrt(stats.variance / stats.count)
    half = z_value(confidence) * std_error
    return MonteCarloEstimate(
        estimate=stats.mean,
        std_error=std_error,
        ci=(stats.mean - half, stats.mean + half),
        samples=stats.count,
        seed=seed,
    )


def wilson_interval(successes: int, trials: int, confidence: float = CONFIDENCE) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ValueError(f"`trials` must be positive, got {trials}.")
    z = z_value(confidence)
    p = successes / trials
    denominator = 1 + z**2 / trials
    centre = (p + z**2 / (2 * trials)) / denominator
    half = z * math.sqrt(p * (1 - p) / trials + z**2 / (4 * trials**2)) / denominator
    low = 0.0 if successes == 0 else min(p, max(0.0, centre - half))
    high = 1.0 if successes == trials else max(p, min(1.0, centre + half))
    return low, high


def exceedance_counts(
    sampler: Callable[[np.random.Generator, int], np.ndarray],
    thresholds: Sequence[float],
    samples: int,
    seed: int,
    workers: int = 1,
) -> tuple[np.ndarray, int]:
    """Number of draws with value >= t for each threshold t, and the total draw count."""
    grid = np.asarray(thresholds, dtype=float)

    def count(rng: np.random.Generator, size: int) -> np.ndarray:
        values = sampler(rng, size)
        return (values[:, None] >= grid[None, :]).sum(axis=0)

    parts = run_batches(count, samples, seed, workers)
    return np.sum(parts, axis=0), samples


def constant_a_monte_carlo(samples: int = 1_000_000, seed: int = 0, workers: int = 1) -> MonteCarloEstimate:
    """Monte Carlo estimate of E[log|Z|]."""
    return monte_carlo_mean(DistributionKit.sample_y, samples, seed, workers)


def variance_tau2_monte_carlo(samples: int = 1_000_000, seed: int = 0, workers: int = 1) -> MonteCarloEstimate:
    """Monte Carlo estimate of Var[log|Z|] as the mean of (log|Z| - a)^2."""
    return monte_carlo_mean(
        lambda rng, size: np.square(DistributionKit.sample_y(rng, size) - A_CLOSED_FORM), samples, seed, workers
    )


def mean_w_monte_carlo(samples: int = 1_000_000, seed: int = 0, workers: int = 1) -> MonteCarloEstimate:
    return monte_carlo_mean(DistributionKit.sample_w, samples, seed, workers)
