# ABOUTME: Error classes raised across the binomial root solver and its experiment harness
# ABOUTME: Each error carries a default message and derives from the closest builtin exception


class BinomialRootsError(Exception):
    """Base class for every domain error raised by this package."""

    def __init__(self, message="An error occurred while solving a binomial system."):
        self.message = message
        super().__init__(self.message)


class SingularMatrixError(BinomialRootsError, ValueError):
    """Exception raised when an exponent matrix has determinant 0."""

    def __init__(self, message="The exponent matrix is singular (determinant 0)."):
        super().__init__(message)


class ZeroValueError(BinomialRootsError, ValueError):
    """Exception raised when zero is converted to log-sign form."""

    def __init__(self, message="Zero has no log-sign representation."):
        super().__init__(message)


class NonFiniteError(BinomialRootsError, ValueError):
    """Exception raised when an infinite or NaN value is converted to log-sign form."""

    def __init__(self, message="Only finite values have a log-sign representation."):
        super().__init__(message)


class ZeroCoefficientError(BinomialRootsError, ValueError):
    """Exception raised when a binomial equation has a zero coefficient."""

    def __init__(self, message="Every binomial coefficient must be nonzero."):
        super().__init__(message)


class NegativeEvenRootError(BinomialRootsError, ArithmeticError):
    """Exception raised when an even root of a negative number is requested."""

    def __init__(self, message="An even root of a negative number is not real."):
        super().__init__(message)


class NoRealRootError(BinomialRootsError, ArithmeticError):
    """Exception raised when a real root is requested from a system without one."""

    def __init__(self, message="The system has no real root."):
        super().__init__(message)


class InvalidOrthantError(BinomialRootsError, ValueError):
    """Exception raised when an orthant choice does not match the exponent parities."""

    def __init__(self, message="The orthant choice is inconsistent with the diagonal system."):
        super().__init__(message)


class PrecisionExhaustedError(BinomialRootsError, ArithmeticError):
    """Exception raised when a magnitude does not fit the integer bits of the precision budget."""

    def __init__(self, message="The precision budget cannot hold this magnitude."):
        super().__init__(message)


class CertificationFailedError(BinomialRootsError, RuntimeError):
    """Exception raised when no precision escalation produces a certified root."""

    def __init__(self, message="Root certification failed after every precision escalation."):
        super().__init__(message)


class DimensionTooLargeError(BinomialRootsError, ValueError):
    """Exception raised when brute-force sign enumeration is asked for too many variables."""

    def __init__(self, message="Sign enumeration supports at most 20 variables."):
        super().__init__(message)


class WeightSumNonzeroError(BinomialRootsError, ValueError):
    """Exception raised when an experiment needs zero-sum weights and gets others."""

    def __init__(self, message="The weight vector must sum to zero."):
        super().__init__(message)


class ScaleTooSmallError(BinomialRootsError, ValueError):
    """Exception raised when the scale parameter d is below e^2."""

    def __init__(self, message="The scale parameter d must be at least e^2."):
        super().__init__(message)
