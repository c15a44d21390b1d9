# ABOUTME: binomial_roots package initialization
# ABOUTME: Certified real roots of square binomial systems and the experiments around them

__version__ = "1.0.0"

__all__ = ["__version__"]
