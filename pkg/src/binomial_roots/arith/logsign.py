# ABOUTME: Log-sign scalars: a nonzero real stored as its sign and the natural log of its magnitude
# ABOUTME: Arithmetic runs in per-precision mpmath contexts that are created once and never mutated

import logging
import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache
from typing import Any, TypeAlias

from mpmath import MPContext

from binomial_roots.utils.counters import record
from binomial_roots.utils.errors import NegativeEvenRootError, NonFiniteError, ZeroValueError

DEFAULT_PRECISION = 96
# Magnitudes with |log| above this are not rendered as float64
NATIVE_LOG_LIMIT = 700.0

RealLike: TypeAlias = int | float | Decimal | Fraction | str

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def precision_context(bits: int) -> MPContext:
    """Return the shared mpmath context working at `bits` bits of mantissa.

    Contexts are cached per precision and their `prec` is never changed after creation,
    so they can be used from several threads at once.
    """
    if bits < 2:
        raise ValueError(f"Precision must be at least 2 bits, got {bits}.")
    ctx = MPContext()
    ctx.prec = bits
    return ctx


@dataclass(frozen=True)
class LogSign:
    """A nonzero real number `sign * exp(logabs)`.

    Attributes:
        sign: +1 or -1.
        logabs: Natural log of the absolute value, an mpf carried at `precision` bits.
        precision: Working precision (mantissa bits) of `logabs`.
    """

    sign: int
    logabs: Any
    precision: int = DEFAULT_PRECISION

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError(f"`sign` is expected to be 1 or -1, but {self.sign} is provided.")
        ctx = precision_context(self.precision)
        logabs = ctx.convert(self.logabs) if not isinstance(self.logabs, str) else ctx.mpf(self.logabs)
        if not ctx.isfinite(logabs):
            raise NonFiniteError(f"`logabs` must be finite, got {self.logabs}.")
        object.__setattr__(self, "logabs", ctx.mpf(logabs))

    @property
    def context(self) -> MPContext:
        return precision_context(self.precision)

    @property
    def fits_native(self) -> bool:
        """True when the value can be rendered as a float64 without overflow or underflow."""
        return abs(float(self.logabs)) <= NATIVE_LOG_LIMIT

    def to_real(self) -> float:
        if not self.fits_native:
            raise OverflowError(f"Magnitude exp({self.context.nstr(self.logabs, 15)}) does not fit a float.")
        return self.sign * float(self.context.exp(self.logabs))

    def to_mpf(self, precision: int | None = None):
        """The value itself as an mpf (may be astronomically large or small)."""
        ctx = precision_context(precision or self.precision)
        return self.sign * ctx.exp(ctx.mpf(self.logabs))

    def with_precision(self, precision: int) -> "LogSign":
        return LogSign(self.sign, self.logabs, precision)

    def to_json(self) -> dict[str, Any]:
        return {"sign": self.sign, "log_abs": format_logabs(self.logabs, self.precision)}

    def __mul__(self, other: "LogSign") -> "LogSign":
        return mul(self, other)

    def __truediv__(self, other: "LogSign") -> "LogSign":
        return div(self, other)

    def __neg__(self) -> "LogSign":
        return neg(self)

    def __pow__(self, k: int) -> "LogSign":
        return pow_int(self, k)


def format_logabs(value: Any, precision: int) -> str:
    """Decimal string for a log magnitude, with every digit the precision supports."""
    ctx = precision_context(precision)
    digits = max(15, math.ceil(precision * math.log10(2)) + 1)
    return ctx.nstr(ctx.mpf(value), digits, min_fixed=-(10**6), max_fixed=10**6)


def _exact_ratio(v: RealLike) -> tuple[int, int]:
    if isinstance(v, bool):
        raise TypeError("Booleans are not real values.")
    if isinstance(v, str):
        v = Decimal(v)
    if isinstance(v, Decimal):
        if not v.is_finite():
            raise NonFiniteError(f"Cannot represent non-finite value {v}.")
    elif isinstance(v, float) and not math.isfinite(v):
        raise NonFiniteError(f"Cannot represent non-finite value {v}.")
    if isinstance(v, int):
        return v, 1
    if isinstance(v, Fraction):
        return v.numerator, v.denominator
    return v.as_integer_ratio()


def from_real(v: RealLike, precision: int = DEFAULT_PRECISION) -> LogSign:
    """Convert an exact or native real to log-sign form.

    Decimals, strings and floats are first turned into their exact rational value, so the
    only rounding is the final logarithm at `precision` bits.

    Raises:
        ZeroValueError: `v` is zero.
        NonFiniteError: `v` is infinite or NaN.
    """
    numerator, denominator = _exact_ratio(v)
    if numerator == 0:
        raise ZeroValueError(f"Cannot take the log-sign form of {v!r}.")
    ctx = precision_context(precision)
    logabs = ctx.log(abs(numerator))
    if denominator != 1:
        logabs = logabs - ctx.log(denominator)
    sign = 1 if numerator > 0 else -1
    return LogSign(sign, logabs, precision)


def _promoted(a: LogSign, b: LogSign) -> MPContext:
    return precision_context(max(a.precision, b.precision))


def mul(a: LogSign, b: LogSign) -> LogSign:
    ctx = _promoted(a, b)
    record(logsign_ops=1)
    return LogSign(a.sign * b.sign, ctx.mpf(a.logabs) + ctx.mpf(b.logabs), ctx.prec)


def div(a: LogSign, b: LogSign) -> LogSign:
    ctx = _promoted(a, b)
    record(logsign_ops=1)
    return LogSign(a.sign * b.sign, ctx.mpf(a.logabs) - ctx.mpf(b.logabs), ctx.prec)


def neg(a: LogSign) -> LogSign:
    return LogSign(-a.sign, a.logabs, a.precision)


def pow_int(a: LogSign, k: int) -> LogSign:
    """`a**k` for any integer `k`; the sign follows the parity of `k`."""
    ctx = a.context
    record(logsign_ops=1)
    sign = a.sign if k % 2 else 1
    return LogSign(sign, ctx.mpf(a.logabs) * k, a.precision)


def root_positive(a: LogSign, s: int) -> LogSign:
    """The real `s`-th root of `a`: same sign for odd `s`, the positive root for even `s`.

    Raises:
        NegativeEvenRootError: `s` is even and `a` is negative.
    """
    if s < 1:
        raise ValueError(f"Root index must be a positive integer, got {s}.")
    if s % 2 == 0 and a.sign < 0:
        raise NegativeEvenRootError(f"The {s}-th root of a negative number is not real.")
    ctx = a.context
    record(logsign_ops=1)
    sign = a.sign if s % 2 else 1
    return LogSign(sign, ctx.mpf(a.logabs) / s, a.precision)


def pow_by_squaring(a: LogSign, k: int) -> LogSign:
    """`a**k` for `k >= 1` by square-and-multiply, one LogSign product per step."""
    if k < 1:
        raise ValueError(f"Exponent must be positive, got {k}.")
    result: LogSign | None = None
    base = a
    while True:
        if k & 1:
            result = base if result is None else mul(result, base)
        k >>= 1
        if not k:
            break
        base = mul(base, base)
    return result


def compare_magnitude(a: LogSign, b: LogSign) -> int:
    """Return -1, 0 or 1 as |a| is below, equal to or above |b|."""
    record(comparisons=1)
    ctx = _promoted(a, b)
    x, y = ctx.mpf(a.logabs), ctx.mpf(b.logabs)
    return (x > y) - (x < y)
