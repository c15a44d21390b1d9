# ABOUTME: Densities and seeded samplers for Z, Y = log|Z|, W = Y - a, the exponential and the Laplace law
# ABOUTME: Densities take an mpmath context for quadrature; samplers take a numpy Generator

import math

import numpy as np

EULER_GAMMA = 0.57721566490153286061

# E log|Z| and Var log|Z| for a standard Gaussian Z
A_CLOSED_FORM = -(EULER_GAMMA + math.log(2.0)) / 2
TAU2_CLOSED_FORM = math.pi**2 / 8
TAU = math.sqrt(TAU2_CLOSED_FORM)


class DistributionKit:
    """Namespace for the random variables the probabilistic checks are built on.

    Z: standard Gaussian. Y = log|Z| with density sqrt(2/pi) e^t exp(-e^(2t)/2).
    W = Y - a, centred. Theta: rate-1 exponential. L: symmetric exponential (Laplace).
    """

    @staticmethod
    def density_y(t, ctx):
        # Beyond this point exp(-e^{2t}/2) is below the working precision
        if 2 * t > math.log(2 * (ctx.prec * math.log(2) + 64)):
            return ctx.zero
        return ctx.sqrt(2 / ctx.pi) * ctx.exp(t - ctx.exp(2 * t) / 2)

    @staticmethod
    def density_theta(t, ctx):
        return ctx.exp(-t) if t >= 0 else ctx.zero

    @staticmethod
    def density_laplace(t, ctx):
        return ctx.exp(-abs(t)) / 2

    @staticmethod
    def sample_z(rng: np.random.Generator, size) -> np.ndarray:
        return rng.standard_normal(size)

    @staticmethod
    def sample_y(rng: np.random.Generator, size) -> np.ndarray:
        return np.log(np.abs(DistributionKit.sample_z(rng, size)))

    @staticmethod
    def sample_w(rng: np.random.Generator, size) -> np.ndarray:
        return DistributionKit.sample_y(rng, size) - A_CLOSED_FORM

    @staticmethod
    def sample_weighted_w(rng: np.random.Generator, weights: np.ndarray, size: int) -> np.ndarray:
        """Samples of W_a = sum_i a_i W_i for i.i.d. copies W_i."""
        weights = np.asarray(weights, dtype=float)
        return DistributionKit.sample_w(rng, (size, weights.size)) @ weights

    @staticmethod
    def sample_theta(rng: np.random.Generator, size) -> np.ndarray:
        return rng.standard_exponential(size)

    @staticmethod
    def sample_laplace(rng: np.random.Generator, size) -> np.ndarray:
        return rng.laplace(0.0, 1.0, size)
