# ABOUTME: The solving pipeline: diagonalize, decide and count real roots, solve, back-substitute, certify
# ABOUTME: Certification failures escalate the fraction bits of the precision budget before giving up

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

from binomial_roots.arith.logsign import (
    LogSign,
    compare_magnitude,
    div,
    mul,
    pow_by_squaring,
    precision_context,
    root_positive,
)
from binomial_roots.arith.precision import INTEGER_FLOOR, PrecisionBudget, precision_budget
from binomial_roots.core.certificate import RootCertificate, certify
from binomial_roots.core.config import SolverConfig
from binomial_roots.core.system import BinomialSystem, DiagonalSystem
from binomial_roots.linalg.monomial import apply_exponent
from binomial_roots.linalg.smith import SmithFactorization, smith_normal_form
from binomial_roots.utils.counters import record
from binomial_roots.utils.errors import (
    CertificationFailedError,
    InvalidOrthantError,
    NegativeEvenRootError,
    NoRealRootError,
    PrecisionExhaustedError,
)

logger = logging.getLogger(__name__)


class SolveStatus(str, Enum):
    ROOT_FOUND = "root_found"
    NO_REAL_ROOT = "no_real_root"


@dataclass(frozen=True)
class SolveResult:
    status: SolveStatus
    smith: SmithFactorization
    root: tuple[LogSign, ...] | None = None
    certificate: RootCertificate | None = None
    budget: PrecisionBudget | None = None
    escalations: int = 0

    @property
    def found(self) -> bool:
        return self.status is SolveStatus.ROOT_FOUND


def solver_budget(
    F: BinomialSystem, factorization: SmithFactorization, config: SolverConfig | None = None
) -> PrecisionBudget:
    """Precision budget for `F`, or the fixed precision requested in `config`."""
    config = config or SolverConfig()
    budget = precision_budget(
        n=F.n,
        d=max(1, F.A.max_abs_entry),
        sigma=F.sigma,
        max_exponent=factorization.max_exponent,
        fraction_floor=config.fraction_floor,
        integer_floor=config.integer_floor,
        guard_bits=config.integer_guard_bits,
    )
    if config.precision_bits is not None:
        integer_bits = min(budget.integer_bits, config.precision_bits - 32)
        budget = PrecisionBudget(integer_bits=integer_bits, fraction_bits=config.precision_bits - integer_bits)
    return budget


def diagonalize(
    F: BinomialSystem, precision: int | None = None, factorization: SmithFactorization | None = None
) -> DiagonalSystem:
    """Turn `x^A = c~` into `z^S = gamma` with `gamma = c~^V`.

    Any root `mu` of the diagonal system gives the root `mu^U` of `F`.
    """
    factorization = factorization or smith_normal_form(F.A)
    if precision is None:
        precision = solver_budget(F, factorization).total
    targets = apply_exponent(F.ratios(precision), factorization.V)
    return DiagonalSystem(factorization.S, tuple(targets), factorization)


def diagonal_signs(F: BinomialSystem, factorization: SmithFactorization) -> tuple[int, ...]:
    """Signs of `gamma = c~^V`, computed exactly from the coefficient signs."""
    signs = F.ratio_signs()
    result = []
    for i in range(F.n):
        sign = 1
        for j in range(F.n):
            if factorization.V[j][i] % 2:
                sign *= signs[j]
        result.append(sign)
    return tuple(result)


def _root_multiplicities(F: BinomialSystem, factorization: SmithFactorization) -> list[int]:
    multiplicities = []
    for s, sign in zip(factorization.S, diagonal_signs(F, factorization)):
        record(comparisons=1)
        if s % 2:
            multiplicities.append(1)
        else:
            multiplicities.append(2 if sign > 0 else 0)
    return multiplicities


def has_real_root(F: BinomialSystem, factorization: SmithFactorization | None = None) -> bool:
    factorization = factorization or smith_normal_form(F.A)
    return all(m > 0 for m in _root_multiplicities(F, factorization))


def count_real_roots(F: BinomialSystem, factorization: SmithFactorization | None = None) -> int:
    factorization = factorization or smith_normal_form(F.A)
    count = 1
    for m in _root_multiplicities(F, factorization):
        count *= m
    return count


def _magnitude_bracket(gamma: LogSign, budget: PrecisionBudget) -> int:
    """Smallest k with e^(2^k) >= max(|gamma|, 1/|gamma|), found by repeated squaring."""
    target = LogSign(1, abs(gamma.logabs), gamma.precision)
    bound = LogSign(1, 1, gamma.precision)
    k = 0
    while compare_magnitude(bound, target) < 0:
        bound = bound * bound
        k += 1
        if k > budget.integer_bits:
            raise PrecisionExhaustedError(
                f"|log gamma| exceeds 2^{budget.integer_bits}; the budget has too few integer bits."
            )
    return k


def solve_univariate(s: int, gamma: LogSign, budget: PrecisionBudget) -> LogSign:
    """Approximate real root of z^s = gamma at the budgeted precision.

    Odd `s` gives the root with the sign of `gamma`; even `s` the positive root. The magnitude
    bracket e^(2^k) >= max(|gamma|, 1/|gamma|) gives the start z0 = e^(+-2^k / s); one step in log
    coordinates moves it onto the root, which is then checked by square-and-multiply.

    Raises:
        NegativeEvenRootError: `s` is even and `gamma` is negative.
        PrecisionExhaustedError: |log gamma| does not fit the budget's integer bits.
    """
    if s < 1:
        raise ValueError(f"Root index must be a positive integer, got {s}.")
    if s % 2 == 0 and gamma.sign < 0:
        raise NegativeEvenRootError(f"z^{s} = {gamma.to_json()} has no real solution.")
    gamma = gamma.with_precision(max(budget.total, gamma.precision))
    ctx = precision_context(gamma.precision)

    bracket = _magnitude_bracket(gamma, budget)
    direction = 1 if gamma.logabs >= 0 else -1
    z0 = LogSign(gamma.sign if s % 2 else 1, ctx.ldexp(direction, bracket) / s, gamma.precision)
    # gamma / z0^s is positive, so its positive root is the remaining factor
    z = mul(z0, root_positive(div(gamma, pow_by_squaring(z0, s)), s))

    check = pow_by_squaring(z, s)
    residual = div(check, gamma)
    if check.sign != gamma.sign or abs(residual.logabs) > 0.125:
        raise PrecisionExhaustedError(f"Root of z^{s} = gamma is off by a log factor {residual.logabs}.")
    z = LogSign(z.sign, ctx.mpf(z.logabs) - ctx.mpf(residual.logabs) / s, z.precision)
    record(logsign_ops=1, newton_iters=1)
    logger.debug(f"Univariate root s={s}: bracket 2^{bracket}, residual {ctx.nstr(residual.logabs, 5)}")
    return z


def _diagonal_budget(D: DiagonalSystem) -> PrecisionBudget:
    magnitude_bits = max(1, int(D.max_log_target) + 1).bit_length()
    integer_bits = max(INTEGER_FLOOR, magnitude_bits + 8)
    fraction_bits = max(D.precision - integer_bits, 32 + max(D.exponents).bit_length())
    return PrecisionBudget(integer_bits=integer_bits, fraction_bits=fraction_bits)


def solve_diagonal(
    D: DiagonalSystem,
    orthant_choice: Sequence[int | None] | None = None,
    budget: PrecisionBudget | None = None,
) -> list[LogSign]:
    """Solve `z_i^(s_i) = gamma_i` coordinatewise.

    `orthant_choice` picks the sign of each coordinate. For odd `s_i` the sign is forced to
    `sign(gamma_i)` and the entry must be that sign or None/0; for even `s_i` it selects the
    branch (+1 by default).

    Raises:
        NoRealRootError: some even `s_i` has a negative target.
        InvalidOrthantError: `orthant_choice` has the wrong length or asks for an impossible sign.
    """
    if orthant_choice is not None and len(orthant_choice) != D.n:
        raise InvalidOrthantError(f"Orthant choice has {len(orthant_choice)} entries for {D.n} variables.")
    budget = budget or _diagonal_budget(D)

    mu = []
    for i, (s, gamma) in enumerate(zip(D.exponents, D.targets)):
        choice = orthant_choice[i] if orthant_choice is not None else None
        if choice not in (None, 0, 1, -1):
            raise InvalidOrthantError(f"Orthant entries must be +1, -1 or None, got {choice!r}.")
        if s % 2 == 0 and gamma.sign < 0:
            raise NoRealRootError(f"Equation {i}: z^{s} has a negative target.")
        if s % 2 and choice and choice != gamma.sign:
            raise InvalidOrthantError(f"Coordinate {i} has odd exponent {s}; its sign is forced to {gamma.sign}.")
        root = solve_univariate(s, gamma, budget)
        if s % 2 == 0 and choice == -1:
            root = -root
        mu.append(root)
    return mu


def back_substitute(mu: Sequence[LogSign], U: Sequence[Sequence[int]]) -> list[LogSign]:
    return apply_exponent(mu, U)


def solve(
    F: BinomialSystem,
    config: SolverConfig | None = None,
    orthant_choice: Sequence[int | None] | None = None,
) -> SolveResult:
    """Find a certified real approximate root of `F` or decide there is none.

    Raises:
        CertificationFailedError: no certified root after `config.max_escalations` precision doublings.
    """
    config = config or SolverConfig()
    factorization = smith_normal_form(F.A)
    if not has_real_root(F, factorization):
        logger.info(f"No real root: S={factorization.S}")
        return SolveResult(status=SolveStatus.NO_REAL_ROOT, smith=factorization)

    budget = solver_budget(F, factorization, config)
    certificate = None
    for attempt in range(config.max_escalations + 1):
        tolerance = budget.tolerance(config.tolerance, attempt)
        diagonal = diagonalize(F, budget.total, factorization)
        mu = solve_diagonal(diagonal, orthant_choice, budget)
        zeta = back_substitute(mu, factorization.U)
        certificate = certify(
            F,
            zeta,
            tolerance,
            diagonal,
            newton_steps=config.certify_newton_steps,
            alpha_threshold=config.alpha_threshold,
        )
        if certificate.passes:
            logger.debug(f"Certified root at {budget.total} bits after {attempt} escalation(s)")
            return SolveResult(
                status=SolveStatus.ROOT_FOUND,
                smith=factorization,
                root=tuple(zeta),
                certificate=certificate,
                budget=budget,
                escalations=attempt,
            )
        logger.warning(
            f"Certification failed at {budget.total} bits (max residual {certificate.max_residual:.3e}), "
            "escalating precision"
        )
        budget = budget.escalated()

    raise CertificationFailedError(
        f"No certified root after {config.max_escalations} escalations; "
        f"last max residual {certificate.max_residual:.3e}."
    )


def valid_orthant_choices(F: BinomialSystem, factorization: SmithFactorization | None = None) -> list[tuple]:
    """Every orthant choice that selects a distinct real root; empty when there is none."""
    factorization = factorization or smith_normal_form(F.A)
    if not has_real_root(F, factorization):
        return []
    options = [(None,) if s % 2 else (1, -1) for s in factorization.S]
    return list(itertools.product(*options))


def enumerate_roots(F: BinomialSystem, config: SolverConfig | None = None) -> list[SolveResult]:
    """Solve `F` once per valid orthant choice, yielding all of its real roots."""
    return [solve(F, config, choice) for choice in valid_orthant_choices(F)]
