# ABOUTME: Brute-force real root oracle that enumerates every sign pattern of the variables
# ABOUTME: Independent of the Smith factorization, used to cross-check decisions and counts

import logging
from dataclasses import dataclass

import numpy as np

from binomial_roots.core.system import BinomialSystem
from binomial_roots.utils.errors import DimensionTooLargeError

logger = logging.getLogger(__name__)

MAX_ORACLE_DIMENSION = 20
_CHUNK = 1 << 16


@dataclass(frozen=True)
class OracleResult:
    exists: bool
    count: int
    # Solution of A^T log|x| = log|c~|, shared by every feasible sign pattern
    log_magnitudes: tuple[float, ...]


def sign_enumeration_oracle(F: BinomialSystem) -> OracleResult:
    """Count real roots by testing all 2^n sign patterns.

    A pattern sigma is feasible when prod_j sigma_j^(a_ji) = sign(c~_i) for every equation,
    i.e. when the parity vector of its negative coordinates times (A mod 2) matches the
    negative targets over GF(2). Each feasible pattern holds exactly one root.

    Raises:
        DimensionTooLargeError: more than 20 variables.
    """
    n = F.n
    if n > MAX_ORACLE_DIMENSION:
        raise DimensionTooLargeError(f"Sign enumeration needs n <= {MAX_ORACLE_DIMENSION}, got {n}.")

    parity = np.array([[v % 2 for v in row] for row in F.A.entries], dtype=np.uint8)
    target = np.array([1 if s < 0 else 0 for s in F.ratio_signs()], dtype=np.uint8)
    shifts = np.arange(n, dtype=np.int64)

    count = 0
    total = 1 << n
    for start in range(0, total, _CHUNK):
        codes = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        negatives = ((codes[:, None] >> shifts) & 1).astype(np.uint8)
        feasible = np.all((negatives @ parity) % 2 == target, axis=1)
        count += int(feasible.sum())

    A = np.array(F.A.entries, dtype=float)
    log_ratios = np.array(F.log_ratio_magnitudes())
    log_magnitudes = np.linalg.solve(A.T, log_ratios)
    logger.debug(f"Sign enumeration over {total} patterns: {count} feasible")
    return OracleResult(exists=count > 0, count=count, log_magnitudes=tuple(float(v) for v in log_magnitudes))
