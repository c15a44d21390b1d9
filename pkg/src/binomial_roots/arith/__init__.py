# ABOUTME: Log-sign scalar arithmetic and the precision budget policy
# ABOUTME: LogSign values carry their own precision; mixed operands promote to the larger one

from .logsign import (
    DEFAULT_PRECISION,
    LogSign,
    compare_magnitude,
    div,
    from_real,
    mul,
    neg,
    pow_by_squaring,
    pow_int,
    precision_context,
    root_positive,
)
from .precision import PrecisionBudget, precision_budget

__all__ = [
    "DEFAULT_PRECISION",
    "LogSign",
    "PrecisionBudget",
    "compare_magnitude",
    "div",
    "from_real",
    "mul",
    "neg",
    "pow_by_squaring",
    "pow_int",
    "precision_budget",
    "precision_context",
    "root_positive",
]
