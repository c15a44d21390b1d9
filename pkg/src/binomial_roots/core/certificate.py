# ABOUTME: Root certificates: log residuals, sign checks, Newton contraction evidence and the alpha test
# ABOUTME: Evidence for each diagonal factor z^s - gamma is gathered only when its magnitudes fit a float

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from binomial_roots.arith.logsign import LogSign, from_real, mul, precision_context
from binomial_roots.core.config import ALPHA_THRESHOLD
from binomial_roots.core.system import BinomialSystem, DiagonalSystem
from binomial_roots.linalg.monomial import apply_exponent
from binomial_roots.linalg.smith import smith_normal_form
from binomial_roots.utils.counters import record

logger = logging.getLogger(__name__)

# Higher derivatives beyond this order never dominate the alpha-theory gamma of z^s - c
MAX_DERIVATIVE_ORDER = 64


@dataclass(frozen=True)
class RootCertificate:
    """Evidence that a point is an approximate root.

    Attributes:
        residuals: Per equation, |log|c1 * zeta^(a_i)| - log|c0||.
        sign_ok: Per equation, whether c1 * zeta^(a_i) has the sign of -c0.
        contraction_ratios: Per diagonal factor, |z_{k+1} - root| / |z_k - root|^2 along a Newton run;
            empty when the factor is out of native range.
        alpha: Per diagonal factor, the alpha-test value, or None when not applicable.
        tolerance: Residual tolerance the certificate was judged against.
    """

    residuals: tuple[float, ...]
    sign_ok: tuple[bool, ...]
    contraction_ratios: tuple[tuple[float, ...], ...]
    alpha: tuple[float | None, ...]
    tolerance: float
    alpha_threshold: float = ALPHA_THRESHOLD

    @property
    def passes(self) -> bool:
        return (
            all(r <= self.tolerance for r in self.residuals)
            and all(self.sign_ok)
            and all(a <= self.alpha_threshold for a in self.alpha if a is not None)
        )

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)

    def to_dict(self) -> dict[str, Any]:
        return {
            "passes": self.passes,
            "tolerance": self.tolerance,
            "residuals": list(self.residuals),
            "sign_ok": list(self.sign_ok),
            "contraction_ratios": [list(r) for r in self.contraction_ratios],
            "alpha": list(self.alpha),
        }


def _reference_root(s: int, gamma: LogSign, branch: int, ctx):
    sign = gamma.sign if s % 2 else branch
    return sign * ctx.exp(ctx.mpf(gamma.logabs) / s)


def newton_errors(s: int, gamma: LogSign, z0: LogSign, steps: int = 4, precision: int | None = None) -> list:
    """Distances |z_k - root| for Newton on z^s - gamma started at z0, k = 0..steps.

    Iterates are carried at three times `precision` and compared against the root of the same
    branch as z0, computed at six times `precision`. Distances are mpf values.
    """
    precision = precision or max(gamma.precision, z0.precision)
    ctx = precision_context(3 * precision)
    ref = precision_context(6 * precision)
    root = _reference_root(s, gamma, z0.sign, ref)
    c = gamma.to_mpf(ctx.prec)

    z = z0.to_mpf(ctx.prec)
    errors = [abs(ref.mpf(z) - root)]
    for _ in range(steps):
        z = z - (z**s - c) / (s * z ** (s - 1))
        errors.append(abs(ref.mpf(z) - root))
    record(newton_iters=steps)
    return errors


def newton_noise_floor(scale, precision: int):
    """Smallest distance to the root that `newton_errors` resolves around a root of size `scale`.

    Iterates carry `3 * precision` bits, so distances below a few hundred ulps of the root are
    rounding, not convergence.
    """
    ctx = precision_context(6 * precision)
    return abs(ctx.mpf(scale)) * ctx.ldexp(1, -(3 * precision - 8))


def contraction_ratios(errors: Sequence, precision: int, scale) -> tuple[float, ...]:
    """|e_{k+1}| / |e_k|^2 for consecutive errors that sit above the arithmetic noise floor."""
    floor = newton_noise_floor(scale, precision)
    ratios = []
    for current, following in zip(errors, errors[1:]):
        if current <= floor or following <= floor:
            break
        ratios.append(float(following / current**2))
    return tuple(ratios)


def alpha_value(s: int, gamma: LogSign, z: LogSign, precision: int | None = None) -> float:
    """Smale's alpha = beta * gamma for f(z) = z^s - gamma at the point z."""
    precision = precision or max(gamma.precision, z.precision)
    ctx = precision_context(2 * precision)
    if s == 1:
        return 0.0
    x = z.to_mpf(ctx.prec)
    c = gamma.to_mpf(ctx.prec)
    beta = abs((x**s - c) / (s * x ** (s - 1)))
    # |f^(k)(x) / (k! f'(x))|^(1/(k-1)) = (C(s, k) / s)^(1/(k-1)) / |x|
    gamma_s = max(
        (ctx.mpf(math.comb(s, k)) / s) ** (ctx.one / (k - 1)) for k in range(2, min(s, MAX_DERIVATIVE_ORDER) + 1)
    ) / abs(x)
    return float(beta * gamma_s)


def _diagonal_for(F: BinomialSystem, precision: int) -> DiagonalSystem:
    factorization = smith_normal_form(F.A)
    targets = apply_exponent(F.ratios(precision), factorization.V)
    return DiagonalSystem(factorization.S, tuple(targets), factorization)


def certify(
    F: BinomialSystem,
    zeta: Sequence[LogSign],
    tol: float = 1e-9,
    diagonal: DiagonalSystem | None = None,
    newton_steps: int = 4,
    alpha_threshold: float = ALPHA_THRESHOLD,
) -> RootCertificate:
    """Check a candidate root of `F` and gather approximate-root evidence.

    Residuals and signs are judged in log-sign arithmetic. The point is then mapped to the
    diagonal coordinates of `diagonal` (computed when not given), and every factor whose target
    and coordinate fit a float gets a Newton contraction run and an alpha value.
    """
    if len(zeta) != F.n:
        raise ValueError(f"Root has {len(zeta)} coordinates, system has {F.n} variables.")
    precision = max(z.precision for z in zeta)

    monomials = apply_exponent(zeta, F.A.entries)
    residuals = []
    sign_ok = []
    for (c0, c1), y in zip(F.coefficients, monomials):
        lhs = mul(from_real(c1, precision), y)
        rhs = from_real(c0, precision)
        residuals.append(float(abs(lhs.logabs - rhs.logabs)))
        sign_ok.append(lhs.sign == -rhs.sign)
        record(comparisons=1)

    if diagonal is None or diagonal.provenance is None or diagonal.provenance.U_inverse is None:
        diagonal = _diagonal_for(F, precision)
    mu = apply_exponent(zeta, diagonal.provenance.U_inverse)

    ratios: list[tuple[float, ...]] = []
    alphas: list[float | None] = []
    for s, gamma, point in zip(diagonal.exponents, diagonal.targets, mu):
        if not (gamma.fits_native and point.fits_native):
            ratios.append(())
            alphas.append(None)
            continue
        errors = newton_errors(s, gamma, point, newton_steps, precision)
        ratios.append(contraction_ratios(errors, precision, point.to_mpf(precision)))
        alphas.append(alpha_value(s, gamma, point, precision))

    certificate = RootCertificate(
        residuals=tuple(residuals),
        sign_ok=tuple(sign_ok),
        contraction_ratios=tuple(ratios),
        alpha=tuple(alphas),
        tolerance=tol,
        alpha_threshold=alpha_threshold,
    )
    logger.debug(
        f"Certificate: passes={certificate.passes} max residual={certificate.max_residual:.3e} "
        f"alpha={[a for a in certificate.alpha if a is not None]}"
    )
    return certificate
