# ABOUTME: Tail and moment experiments for weighted sums of centred log-Gaussians
# ABOUTME: Empirical tails come with Wilson intervals and are compared against fitted or closed-form envelopes

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from binomial_roots.prob.distributions import TAU, DistributionKit
from binomial_roots.prob.montecarlo import exceedance_counts, run_batches, wilson_interval
from binomial_roots.utils.errors import ScaleTooSmallError, WeightSumNonzeroError

logger = logging.getLogger(__name__)

MIN_TAIL_SAMPLES = 10_000
WEIGHT_ATOL = 1e-9
E_SQUARED = math.e**2


@dataclass(frozen=True)
class TailExperimentConfig:
    """Weights, scale and sampling parameters of one experiment.

    Which constraint the weights must satisfy (unit norm or zero sum) depends on the experiment,
    so it is checked by the experiment rather than here.
    """

    weights: tuple[float, ...]
    d: float = 100.0
    samples: int = 100_000
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        weights = tuple(float(w) for w in self.weights)
        if not weights:
            raise ValueError("`weights` must not be empty.")
        if self.samples < 1:
            raise ValueError(f"`samples` must be positive, got {self.samples}.")
        object.__setattr__(self, "weights", weights)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)

    @property
    def l2(self) -> float:
        return float(np.linalg.norm(self.array))

    @property
    def linf(self) -> float:
        return float(np.max(np.abs(self.array)))

    def require_unit_norm(self) -> None:
        if abs(self.l2 - 1.0) > 1e-6:
            raise ValueError(f"Weights must lie on the unit sphere, got norm {self.l2}.")

    def require_zero_sum(self) -> None:
        if abs(sum(self.weights)) > WEIGHT_ATOL * max(1.0, self.l2):
            raise WeightSumNonzeroError(f"Weights must sum to zero, got sum {sum(self.weights)}.")

    def require_scale(self) -> None:
        if self.d < E_SQUARED * (1 - 1e-12):
            raise ScaleTooSmallError(f"Scale d must be at least e^2, got {self.d}.")


@dataclass(frozen=True)
class TailRow:
    t: float
    probability: float
    ci_lo: float
    ci_hi: float
    samples: int
    bound: float | None = None


@dataclass(frozen=True)
class TailFit:
    """Envelope C' exp(-C min{t / ||theta||_inf, t^2})."""

    C: float
    C_prime: float
    linf: float

    def __call__(self, t: float) -> float:
        return self.C_prime * math.exp(-self.C * tail_exponent(t, self.linf))


@dataclass(frozen=True)
class RearrangedNorms:
    linf_head: float
    l2_tail: float


def sample_unit_direction(dim: int, seed: int) -> tuple[float, ...]:
    """Uniform point on the unit sphere in `dim` dimensions."""
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(dim)
    return tuple(float(x) for x in v / np.linalg.norm(v))


def tail_exponent(t: float, linf: float) -> float:
    return min(t / linf, t * t)


def _tail_table(cfg: TailExperimentConfig, thresholds: Sequence[float], bounds=None) -> list[TailRow]:
    weights = cfg.array
    counts, total = exceedance_counts(
        lambda rng, size: np.abs(DistributionKit.sample_weighted_w(rng, weights, size)),
        thresholds,
        cfg.samples,
        cfg.seed,
        cfg.workers,
    )
    rows = []
    for i, t in enumerate(thresholds):
        lo, hi = wilson_interval(int(counts[i]), total)
        rows.append(
            TailRow(
                t=float(t),
                probability=int(counts[i]) / total,
                ci_lo=lo,
                ci_hi=hi,
                samples=total,
                bound=None if bounds is None else float(bounds[i]),
            )
        )
    return rows


def tail_linear_combination(cfg: TailExperimentConfig, t_grid: Sequence[float]) -> list[TailRow]:
    """Empirical P(|sum_i theta_i log|Z_i| - a sum_i theta_i| >= t) for each t in the grid."""
    cfg.require_unit_norm()
    if cfg.samples < MIN_TAIL_SAMPLES:
        raise ValueError(f"Tail estimates need at least {MIN_TAIL_SAMPLES} samples, got {cfg.samples}.")
    return _tail_table(cfg, t_grid)


def fit_tail_curve(rows: Sequence[TailRow], theta: Sequence[float]) -> TailFit:
    """Fit C' exp(-C min{t/||theta||_inf, t^2}) to the positive part of an empirical tail.

    C comes from least squares on log probabilities; C' is then raised until the curve lies on
    or above every empirical point.
    """
    linf = float(np.max(np.abs(theta)))
    points = [(tail_exponent(r.t, linf), r.probability) for r in rows if r.probability > 0]
    if len(points) < 2:
        raise ValueError("Need at least two grid points with positive tail probability to fit.")
    x = np.array([p[0] for p in points])
    y = np.log([p[1] for p in points])
    slope, _ = np.polyfit(x, y, 1)
    C = max(-float(slope), 1e-12)
    C_prime = max(p * math.exp(C * e) for e, p in points)
    fit = TailFit(C=C, C_prime=C_prime, linf=linf)
    logger.info(f"Tail fit: C={fit.C:.4f}, C'={fit.C_prime:.4f}")
    return fit


def logconcave_tail_check(cfg: TailExperimentConfig, s_grid: Sequence[float] = (1.0, 2.0, 4.0)) -> list[TailRow]:
    """Empirical P(|W_a| >= s) against exp(-s / (2 gamma)), gamma = tau ||a||_2.

    `s_grid` is given in units of gamma.
    """
    cfg.require_zero_sum()
    gamma = TAU * cfg.l2
    if gamma == 0:
        raise ValueError("Weights must not all be zero.")
    thresholds = [m * gamma for m in s_grid]
    bounds = [math.exp(-s / (2 * gamma)) for s in thresholds]
    return _tail_table(cfg, thresholds, bounds)


def rearranged_norms(theta: Sequence[float], p: int) -> RearrangedNorms:
    """Largest |theta_i| among the top min(p, n) entries and the l2 norm of the rest."""
    if p < 1:
        raise ValueError(f"`p` must be at least 1, got {p}.")
    ordered = sorted((abs(float(v)) for v in theta), reverse=True)
    head, tail = ordered[:p], ordered[p:]
    return RearrangedNorms(linf_head=max(head, default=0.0), l2_tail=math.sqrt(sum(v * v for v in tail)))


@dataclass(frozen=True)
class MomentBracketRow:
    p: int
    moment_norm: float
    scale: float

    @property
    def ratio(self) -> float:
        return self.moment_norm / self.scale


def moment_bracket_check(
    theta: Sequence[float], p_list: Sequence[int] = (2, 4, 8, 16), samples: int = 200_000, seed: int = 0
) -> list[MomentBracketRow]:
    """Monte Carlo ||<W, theta>||_p against p ||theta^p||_inf + sqrt(p) ||theta_p||_2."""
    weights = np.asarray(theta, dtype=float)
    p_values = np.asarray(p_list, dtype=float)

    def moment_sums(rng: np.random.Generator, size: int) -> np.ndarray:
        x = np.abs(DistributionKit.sample_weighted_w(rng, weights, size))
        return (x[:, None] ** p_values[None, :]).sum(axis=0)

    totals = np.sum(run_batches(moment_sums, samples, seed), axis=0)
    rows = []
    for p, total in zip(p_list, totals):
        norms = rearranged_norms(theta, p)
        scale = p * norms.linf_head + math.sqrt(p) * norms.l2_tail
        rows.append(MomentBracketRow(p=p, moment_norm=float((total / samples) ** (1 / p)), scale=scale))
    return rows
