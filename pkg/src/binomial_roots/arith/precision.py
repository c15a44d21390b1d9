# ABOUTME: Precision budget policy: how many integer and fractional bits a solve carries
# ABOUTME: Integer bits follow the coefficient/root distortion bound, fraction bits the exponent sizes

import logging
import math
from dataclasses import dataclass, replace

logger = logging.getLogger(__name__)

FRACTION_FLOOR = 32
INTEGER_FLOOR = 16
INTEGER_GUARD_BITS = 8
BASE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class PrecisionBudget:
    """Bits reserved for the integer and fractional parts of every `logabs` in a solve."""

    integer_bits: int
    fraction_bits: int

    def __post_init__(self):
        if self.integer_bits < 1:
            raise ValueError(f"`integer_bits` must be positive, got {self.integer_bits}.")
        if self.fraction_bits < FRACTION_FLOOR:
            raise ValueError(f"`fraction_bits` must be at least {FRACTION_FLOOR}, got {self.fraction_bits}.")

    @property
    def total(self) -> int:
        return self.integer_bits + self.fraction_bits

    def escalated(self) -> "PrecisionBudget":
        return replace(self, fraction_bits=2 * self.fraction_bits)

    def tolerance(self, base: float = BASE_TOLERANCE, escalations: int = 0) -> float:
        """Log-residual tolerance: `base` at the initial budget, tightened with the fraction bits afterwards."""
        if escalations == 0:
            return base
        return min(base, 2.0 ** (-self.fraction_bits + 12))


def _log2_distortion_bound(n: int, d: int, sigma: float) -> float:
    # log2 of n^{4 + 3n/2} * d^{3n} * max(sigma, 1)
    return (4 + 1.5 * n) * math.log2(n) + 3 * n * math.log2(d) + math.log2(max(sigma, 1.0))


def precision_budget(
    n: int,
    d: int,
    sigma: float,
    max_exponent: int,
    fraction_floor: int = FRACTION_FLOOR,
    integer_floor: int = INTEGER_FLOOR,
    guard_bits: int = INTEGER_GUARD_BITS,
) -> PrecisionBudget:
    """Precision needed to solve an n-variable system with entries bounded by `d`.

    Args:
        n: Number of variables.
        d: Largest absolute exponent entry.
        sigma: Largest |log| of a coefficient ratio.
        max_exponent: Largest diagonal exponent or multiplier entry the solve will raise values to.
        fraction_floor: Minimum fraction bits; values below 32 are raised to 32.
        integer_floor: Minimum integer bits.
        guard_bits: Extra integer bits on top of the distortion bound.
    """
    if n < 1:
        raise ValueError(f"`n` must be positive, got {n}.")
    if d < 1:
        raise ValueError(f"`d` must be positive, got {d}.")
    if sigma < 0:
        raise ValueError(f"`sigma` must be nonnegative, got {sigma}.")
    if max_exponent < 0:
        raise ValueError(f"`max_exponent` must be nonnegative, got {max_exponent}.")

    log2_bound = _log2_distortion_bound(n, d, sigma)
    # log2(1 + 2^x) without overflowing for large x
    log2_one_plus = log2_bound if log2_bound > 60 else math.log2(1 + 2.0**log2_bound)
    exponent_bits = max_exponent.bit_length()  # ceil(log2(max_exponent + 1))
    integer_bits = max(integer_floor, math.ceil(log2_one_plus) + exponent_bits + guard_bits)

    size_bits = (n * d).bit_length()  # ceil(log2(n*d + 1))
    fraction_bits = max(FRACTION_FLOOR, fraction_floor, 32 + exponent_bits + size_bits)

    budget = PrecisionBudget(integer_bits=integer_bits, fraction_bits=fraction_bits)
    logger.debug(f"Precision budget for n={n} d={d} sigma={sigma:.3g}: {budget}")
    return budget
