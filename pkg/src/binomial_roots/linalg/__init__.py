# ABOUTME: Exact integer linear algebra for exponent matrices
# ABOUTME: Determinants, Smith factorization with multipliers and monomial maps on log-sign vectors

from .matrix import ExponentMatrix, IntMatrix, determinant, diagonal, identity, matmul, max_abs_entry, transpose
from .monomial import apply_exponent, power_cost
from .smith import SmithFactorization, smith_normal_form, verify_factorization

__all__ = [
    "ExponentMatrix",
    "IntMatrix",
    "SmithFactorization",
    "apply_exponent",
    "determinant",
    "diagonal",
    "identity",
    "matmul",
    "max_abs_entry",
    "power_cost",
    "smith_normal_form",
    "transpose",
    "verify_factorization",
]
