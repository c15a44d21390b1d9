# ABOUTME: Operation counters for the unit-cost arithmetic model used by the scaling experiments
# ABOUTME: A context variable holds the active counter so instrumentation is per-thread and free when off

from collections.abc import Iterator
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import asdict, dataclass


@dataclass
class OpCounter:
    """Counts of the operations performed during one solve.

    Attributes:
        logsign_ops: LogSign ring and root operations, unit cost regardless of precision; a monomial
            map is charged one operation per power and per product.
        newton_iters: Newton steps, both the log-coordinate correction and certification runs.
        comparisons: Real comparisons (sign tests, magnitude brackets).
        snf_bitop_proxy: Machine-word operations on big integers inside the Smith factorization.
    """

    logsign_ops: int = 0
    newton_iters: int = 0
    comparisons: int = 0
    snf_bitop_proxy: int = 0

    @property
    def arith_ops(self) -> int:
        """Field operations plus comparisons, the quantity the scaling fit is run on."""
        return self.logsign_ops + self.comparisons

    def __add__(self, other: "OpCounter") -> "OpCounter":
        return OpCounter(
            logsign_ops=self.logsign_ops + other.logsign_ops,
            newton_iters=self.newton_iters + other.newton_iters,
            comparisons=self.comparisons + other.comparisons,
            snf_bitop_proxy=self.snf_bitop_proxy + other.snf_bitop_proxy,
        )

    def to_dict(self) -> dict[str, int]:
        return asdict(self)


_active_counter: ContextVar[OpCounter | None] = ContextVar("active_op_counter", default=None)


def record(
    logsign_ops: int = 0, newton_iters: int = 0, comparisons: int = 0, snf_bitop_proxy: int = 0
) -> None:
    """Charge operations to the active counter, if any."""
    counter = _active_counter.get()
    if counter is None:
        return
    counter.logsign_ops += logsign_ops
    counter.newton_iters += newton_iters
    counter.comparisons += comparisons
    counter.snf_bitop_proxy += snf_bitop_proxy


def active_counter() -> OpCounter | None:
    return _active_counter.get()


@contextmanager
def counting(counter: OpCounter | None = None) -> Iterator[OpCounter]:
    """Activate a counter for the duration of the block.

    Examples:
        >>> with counting() as ops:
        ...     solve(system)
        >>> ops.arith_ops
    """
    counter = counter if counter is not None else OpCounter()
    token = _active_counter.set(counter)
    try:
        yield counter
    finally:
        _active_counter.reset(token)
