# ABOUTME: Seeded Gaussian ensembles of binomial systems and the unit-variance rescaling
# ABOUTME: Trial seeds are derived as base seed plus trial index

from .gaussian import (
    GaussianEnsemble,
    RescaledSystem,
    derive_seed,
    map_root_back,
    rescale_to_unit_variance,
    sample_exponent_matrix,
    sample_system,
)

__all__ = [
    "GaussianEnsemble",
    "RescaledSystem",
    "derive_seed",
    "map_root_back",
    "rescale_to_unit_variance",
    "sample_exponent_matrix",
    "sample_system",
]
