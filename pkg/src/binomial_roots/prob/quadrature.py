# ABOUTME: Tanh-sinh quadrature of the log-Gaussian constants and moments
# ABOUTME: Every call gets a fresh mpmath context because quad adjusts precision while it runs

import logging
import math

from mpmath import MPContext

from binomial_roots.prob.distributions import A_CLOSED_FORM, DistributionKit

logger = logging.getLogger(__name__)

QUAD_DPS = 30
QUAD_TOL = 1e-10
MAX_MOMENT = 16
# rho_Y(t) < exp(-10000) past this point
Y_RIGHT_END = 5


def _context() -> MPContext:
    ctx = MPContext()
    ctx.dps = QUAD_DPS
    return ctx


def _integrate(f, ctx: MPContext, points, label: str) -> float:
    value, error = ctx.quad(f, points, error=True, maxdegree=10)
    # Absolute tolerance for O(1) integrals, relative for large moments
    if error > QUAD_TOL * max(1.0, abs(float(value))):
        logger.warning(f"Quadrature of {label} reports error {float(error):.2e}")
    return float(value)


def _real_line(ctx: MPContext):
    # Split where the density of Y changes character: exponential left tail, doubly exponential right tail
    return [ctx.ninf, -20, -5, 0, 3, Y_RIGHT_END]


def density_normalization() -> float:
    """Integral of the density of Y over the real line."""
    ctx = _context()
    return _integrate(lambda t: DistributionKit.density_y(t, ctx), ctx, _real_line(ctx), "rho_Y")


def _expected_y() -> float:
    ctx = _context()
    return _integrate(lambda t: t * DistributionKit.density_y(t, ctx), ctx, _real_line(ctx), "E Y")


def constant_a() -> float:
    """E[log|Z|] by quadrature of t * rho_Y(t).

    The value is negative. A warning is logged since the constant is sometimes quoted as lying in (0, 5).
    """
    value = _expected_y()
    if value < 0:
        logger.warning(
            f"E log|Z| = {value:.10f} is negative (closed form {A_CLOSED_FORM:.10f}); "
            "the positivity claim 0 < a < 5 does not hold for this constant"
        )
    return value


def variance_tau2() -> float:
    """Var[log|Z|] by quadrature, centred at the quadrature value of E[log|Z|]."""
    a = _expected_y()
    ctx = _context()
    centre = ctx.mpf(a)
    return _integrate(lambda t: (t - centre) ** 2 * DistributionKit.density_y(t, ctx), ctx, _real_line(ctx), "Var Y")


def moment_w(p: int) -> float:
    """E|W|^p for W = log|Z| - a."""
    a = _expected_y()
    ctx = _context()
    centre = ctx.mpf(a)
    return _integrate(
        lambda t: abs(t - centre) ** p * DistributionKit.density_y(t, ctx), ctx, _real_line(ctx), f"E|W|^{p}"
    )


def moment_theta(p: int) -> float:
    """E[Theta^p] for a rate-1 exponential, by quadrature."""
    ctx = _context()
    return _integrate(lambda t: t**p * DistributionKit.density_theta(t, ctx), ctx, [0, p, ctx.inf], f"E Theta^{p}")


def moment_laplace(p: int) -> float:
    """E|L|^p for the symmetric exponential, by quadrature."""
    ctx = _context()
    return _integrate(
        lambda t: abs(t) ** p * DistributionKit.density_laplace(t, ctx), ctx, [ctx.ninf, -p, 0, p, ctx.inf], f"E|L|^{p}"
    )


def _check_moment_order(p: int) -> None:
    if p < 2 or p > MAX_MOMENT or p % 2:
        raise ValueError(f"Moment order must be an even integer in [2, {MAX_MOMENT}], got {p}.")


def moment_ratio_W(p: int, quad_tol: float = QUAD_TOL) -> float:
    """||W||_p / ||Theta||_p with both norms computed by quadrature."""
    _check_moment_order(p)
    if quad_tol < QUAD_TOL:
        logger.warning(f"Requested tolerance {quad_tol:.0e} is tighter than the quadrature target {QUAD_TOL:.0e}")
    w_norm = moment_w(p) ** (1 / p)
    theta_norm = moment_theta(p) ** (1 / p)
    exact = math.factorial(p) ** (1 / p)
    if abs(theta_norm - exact) > 1e-6 * exact:
        logger.warning(f"||Theta||_{p} = {theta_norm} differs from (p!)^(1/p) = {exact}")
    return w_norm / theta_norm


def laplace_moment_ratio(p: int) -> float:
    """||Theta||_p / ||L||_p, both by quadrature."""
    _check_moment_order(p)
    return (moment_theta(p) / moment_laplace(p)) ** (1 / p)
