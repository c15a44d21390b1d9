# ABOUTME: Seeded random binomial systems with Gaussian coefficients and uniform integer exponents
# ABOUTME: Includes the variance rescaling that reduces any variance profile to unit variances

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from decimal import localcontext
from typing import Any

import numpy as np

from binomial_roots.arith.logsign import DEFAULT_PRECISION, LogSign, from_real, mul, root_positive
from binomial_roots.core.system import BinomialSystem, to_decimal
from binomial_roots.linalg.matrix import ExponentMatrix, determinant
from binomial_roots.linalg.monomial import apply_exponent
from binomial_roots.linalg.smith import smith_normal_form

logger = logging.getLogger(__name__)

RESCALE_DIGITS = 50


def derive_seed(base: int, index: int) -> int:
    """Seed of trial `index` in a run seeded with `base`."""
    return base + index


@dataclass(frozen=True)
class GaussianEnsemble:
    """Distribution of binomial systems of size `n` with exponents in [-d, d].

    Coefficient `c[i][j]` is Normal(0, variances[i][j]); the generator is numpy's PCG64 seeded
    with `seed`.
    """

    n: int
    d: int
    variances: tuple[tuple[float, float], ...] | None = None
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"`n` must be positive, got {self.n}.")
        if self.d < 1:
            raise ValueError(f"`d` must be at least 1, got {self.d}.")
        variances = self.variances
        if variances is None or variances == "unit":
            variances = tuple((1.0, 1.0) for _ in range(self.n))
        variances = tuple((float(v0), float(v1)) for v0, v1 in variances)
        if len(variances) != self.n:
            raise ValueError(f"Expected {self.n} variance pairs, got {len(variances)}.")
        if any(not (v > 0 and math.isfinite(v)) for pair in variances for v in pair):
            raise ValueError(f"Variances must be positive and finite, got {variances}.")
        object.__setattr__(self, "variances", variances)

    @classmethod
    def from_spec(cls, spec: dict[str, Any]) -> "GaussianEnsemble":
        """Build from `{"n": ..., "d": ..., "variances": [[v10, v11], ...] | "unit", "seed": ...}`."""
        variances = spec.get("variances", "unit")
        return cls(
            n=int(spec["n"]),
            d=int(spec["d"]),
            variances=None if variances == "unit" else tuple(tuple(pair) for pair in variances),
            seed=int(spec.get("seed", 0)),
        )


def sample_exponent_matrix(rng: np.random.Generator, n: int, d: int) -> ExponentMatrix:
    """Uniform integer entries in [-d, d], redrawn until the determinant is nonzero."""
    while True:
        entries = tuple(tuple(int(v) for v in row) for row in rng.integers(-d, d + 1, size=(n, n)))
        if determinant(entries) != 0:
            return ExponentMatrix(entries)


def sample_system(e: GaussianEnsemble) -> BinomialSystem:
    """Draw one system; the same ensemble (seed included) always yields the same system."""
    rng = np.random.default_rng(e.seed)
    A = sample_exponent_matrix(rng, e.n, e.d)
    scales = np.sqrt(np.array(e.variances, dtype=float))
    while True:
        draws = rng.normal(0.0, scales)
        # Zero draws have probability 0 but would make the system invalid
        if np.all(draws != 0.0):
            break
    coefficients = tuple((to_decimal(float(c0)), to_decimal(float(c1))) for c0, c1 in draws)
    return BinomialSystem(A, coefficients)


@dataclass(frozen=True)
class RescaledSystem:
    """Unit-variance system `F_tilde` and the scaling `r` with root(F) = r * root(F_tilde)."""

    F_tilde: BinomialSystem
    r: tuple[LogSign, ...]


def rescale_to_unit_variance(
    F: BinomialSystem, e: GaussianEnsemble, precision: int = DEFAULT_PRECISION
) -> RescaledSystem:
    """Substitute x = r * y so that every coefficient of the new system has variance 1.

    Dividing equation i by its constant-term deviation leaves `c1 / sqrt(v_i0) * r^(a_i)`, so `r`
    solves `r^A = rho` with `rho_i = sqrt(v_i0 / v_i1)`, i.e. `A^T log r = log rho`. The solve runs
    through the Smith factorization: `t = rho^V`, `u_i = t_i^(1/s_i)`, `log r = log(u^U)`.

    Raises:
        SingularMatrixError: `F.A` is singular.
    """
    if F.n != e.n:
        raise ValueError(f"System has {F.n} variables, ensemble has {e.n}.")
    factorization = smith_normal_form(F.A)

    with localcontext() as ctx:
        ctx.prec = RESCALE_DIGITS
        deviations = [(to_decimal(v0).sqrt(), to_decimal(v1).sqrt()) for v0, v1 in e.variances]
        rho = [from_real(sd0 / sd1, precision) for sd0, sd1 in deviations]
        coefficients = tuple((c0 / sd0, c1 / sd1) for (c0, c1), (sd0, sd1) in zip(F.coefficients, deviations))

    t = apply_exponent(rho, factorization.V)
    u = [root_positive(ti, s) for ti, s in zip(t, factorization.S)]
    r = apply_exponent(u, factorization.U)
    logger.debug(f"Rescaling logs: {[float(ri.logabs) for ri in r]}")
    return RescaledSystem(F_tilde=BinomialSystem(F.A, coefficients), r=tuple(r))


def map_root_back(y: Sequence[LogSign], r: Sequence[LogSign]) -> list[LogSign]:
    """Root of the original system from a root `y` of the rescaled one."""
    if len(y) != len(r):
        raise ValueError(f"Root has {len(y)} coordinates, scaling has {len(r)}.")
    return [mul(yi, ri) for yi, ri in zip(y, r)]

