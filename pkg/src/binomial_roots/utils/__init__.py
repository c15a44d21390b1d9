# ABOUTME: Utility functions and error handling for binomial_roots
# ABOUTME: Provides error classes, operation counters, logging setup and timers

from .counters import OpCounter, counting, record
from .errors import (
    BinomialRootsError,
    CertificationFailedError,
    DimensionTooLargeError,
    InvalidOrthantError,
    NegativeEvenRootError,
    NoRealRootError,
    NonFiniteError,
    PrecisionExhaustedError,
    ScaleTooSmallError,
    SingularMatrixError,
    WeightSumNonzeroError,
    ZeroCoefficientError,
    ZeroValueError,
)

__all__ = [
    "BinomialRootsError",
    "CertificationFailedError",
    "DimensionTooLargeError",
    "InvalidOrthantError",
    "NegativeEvenRootError",
    "NoRealRootError",
    "NonFiniteError",
    "OpCounter",
    "PrecisionExhaustedError",
    "ScaleTooSmallError",
    "SingularMatrixError",
    "WeightSumNonzeroError",
    "ZeroCoefficientError",
    "ZeroValueError",
    "counting",
    "record",
]
