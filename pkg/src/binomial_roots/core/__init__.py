# ABOUTME: Binomial system types and the diagonalize / decide / solve / certify pipeline
# ABOUTME: Also hosts the solver configuration and the brute-force sign-enumeration oracle

from .certificate import RootCertificate, alpha_value, certify, newton_errors, newton_noise_floor
from .config import SolverConfig, load_solver_config
from .oracle import OracleResult, sign_enumeration_oracle
from .solver import (
    SolveResult,
    SolveStatus,
    back_substitute,
    count_real_roots,
    diagonalize,
    enumerate_roots,
    has_real_root,
    solve,
    solve_diagonal,
    solve_univariate,
    valid_orthant_choices,
)
from .system import BinomialSystem, DiagonalSystem

__all__ = [
    "BinomialSystem",
    "DiagonalSystem",
    "OracleResult",
    "RootCertificate",
    "SolveResult",
    "SolveStatus",
    "SolverConfig",
    "alpha_value",
    "back_substitute",
    "certify",
    "count_real_roots",
    "diagonalize",
    "enumerate_roots",
    "has_real_root",
    "load_solver_config",
    "newton_errors",
    "newton_noise_floor",
    "sign_enumeration_oracle",
    "solve",
    "solve_diagonal",
    "solve_univariate",
    "valid_orthant_choices",
]
