# ABOUTME: Operation-counted solves and the (n, d) scaling experiment with its least-squares fit
# ABOUTME: Each trial gets its own counter and derived seed; cells are merged by summation

import logging
import math
import statistics
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from tqdm import tqdm

from binomial_roots.core.config import SolverConfig
from binomial_roots.core.solver import SolveResult, solve
from binomial_roots.core.system import BinomialSystem
from binomial_roots.ensembles.gaussian import GaussianEnsemble, derive_seed, sample_system
from binomial_roots.utils.counters import OpCounter, counting
from binomial_roots.utils.errors import BinomialRootsError
from binomial_roots.utils.timing import TimerManager

logger = logging.getLogger(__name__)

MIN_TRIALS = 30
MIN_FIT_CELLS = 9
DEFAULT_N_LIST = (2, 4, 8, 16)
DEFAULT_D_LIST = (2, 2**8, 2**16)


@dataclass(frozen=True)
class CountedSolve:
    result: SolveResult
    counter: OpCounter


def count_solve(F: BinomialSystem, config: SolverConfig | None = None) -> CountedSolve:
    """Run `solve` with an active operation counter; the result is the same as an uncounted solve."""
    with counting() as counter:
        result = solve(F, config)
    return CountedSolve(result=result, counter=counter)


@dataclass(frozen=True)
class ScalingRow:
    n: int
    d: int
    trials: int
    failed: int
    mean_arith_ops: float
    stddev: float
    mean_snf_proxy: float
    wall_time: float


@dataclass(frozen=True)
class ScalingFit:
    """y = c1 * n^2 * log(n d) + c2 over the cell means."""

    c1: float
    c2: float
    r_squared: float
    cells: int

    def predict(self, n: int, d: int) -> float:
        return self.c1 * model_feature(n, d) + self.c2


@dataclass(frozen=True)
class ScalingReport:
    rows: tuple[ScalingRow, ...]
    fit: ScalingFit | None
    seed: int
    variances: tuple[float, float] | None = None
    excluded: dict[str, int] = field(default_factory=dict)

    def row(self, n: int, d: int) -> ScalingRow:
        return next(r for r in self.rows if r.n == n and r.d == d)

    def growth_ratios(self) -> dict[int, list[tuple[int, float]]]:
        """For each d, mean ops at 2n divided by mean ops at n, for every n whose double is in the grid."""
        means = {(r.n, r.d): r.mean_arith_ops for r in self.rows}
        ratios: dict[int, list[tuple[int, float]]] = {}
        for (n, d), value in sorted(means.items(), key=lambda item: (item[0][1], item[0][0])):
            doubled = means.get((2 * n, d))
            if doubled is not None and value > 0:
                ratios.setdefault(d, []).append((n, doubled / value))
        return ratios


def model_feature(n: int, d: int) -> float:
    return n * n * math.log(n * d)


def fit_scaling(rows: Sequence[ScalingRow]) -> ScalingFit:
    """Least-squares fit of the mean arithmetic operations to c1 * n^2 log(nd) + c2."""
    x = np.array([model_feature(r.n, r.d) for r in rows])
    y = np.array([r.mean_arith_ops for r in rows])
    design = np.column_stack([x, np.ones_like(x)])
    (c1, c2), *_ = np.linalg.lstsq(design, y, rcond=None)
    residual = y - design @ np.array([c1, c2])
    total = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 - float(np.sum(residual**2)) / total if total > 0 else 1.0
    return ScalingFit(c1=float(c1), c2=float(c2), r_squared=r_squared, cells=len(rows))


def _trial(ensemble: GaussianEnsemble, config: SolverConfig) -> OpCounter | str:
    """Counter of one trial, or the name of the error that excluded it."""
    F = sample_system(ensemble)
    try:
        return count_solve(F, config).counter
    except BinomialRootsError as e:
        logger.warning(f"Trial seed={ensemble.seed} n={ensemble.n} d={ensemble.d} excluded: {e.message}")
        return type(e).__name__


def run_scaling(
    n_list: Sequence[int] = DEFAULT_N_LIST,
    d_list: Sequence[int] = DEFAULT_D_LIST,
    trials: int = 50,
    seed: int = 0,
    variances: tuple[float, float] | None = None,
    workers: int = 1,
    config: SolverConfig | None = None,
    progress: bool = True,
) -> ScalingReport:
    """Mean operation counts of `solve` over random systems for every (n, d) cell.

    Trial t of cell c uses seed `derive_seed(seed, c * trials + t)`, so the report depends only on
    the arguments and not on `workers`. Failed trials are excluded and counted per error type.
    """
    if not n_list or not d_list:
        raise ValueError("`n_list` and `d_list` must not be empty.")
    if trials < MIN_TRIALS:
        raise ValueError(f"At least {MIN_TRIALS} trials per cell are required, got {trials}.")
    config = config or SolverConfig()

    rows = []
    excluded: dict[str, int] = {}
    cells = [(n, d) for n in n_list for d in d_list]
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        for index, (n, d) in enumerate(cells):
            profile = None if variances is None else tuple([variances] * n)
            ensembles = [
                GaussianEnsemble(n, d, profile, derive_seed(seed, index * trials + t)) for t in range(trials)
            ]
            timer = TimerManager(f"cell n={n} d={d}", log=True, logger=logger)
            with timer:
                outcomes = list(
                    tqdm(
                        pool.map(lambda e: _trial(e, config), ensembles),
                        total=trials,
                        desc=f"n={n} d={d}",
                        disable=not progress,
                        leave=False,
                    )
                )
            counters = [o for o in outcomes if isinstance(o, OpCounter)]
            for o in outcomes:
                if isinstance(o, str):
                    excluded[o] = excluded.get(o, 0) + 1
            ops = [c.arith_ops for c in counters]
            cell_total = sum(counters, start=OpCounter())
            rows.append(
                ScalingRow(
                    n=n,
                    d=d,
                    trials=len(counters),
                    failed=trials - len(counters),
                    mean_arith_ops=statistics.fmean(ops) if ops else 0.0,
                    stddev=statistics.stdev(ops) if len(ops) > 1 else 0.0,
                    mean_snf_proxy=cell_total.snf_bitop_proxy / len(counters) if counters else 0.0,
                    wall_time=timer.total,
                )
            )
            logger.info(f"Cell n={n} d={d}: mean ops {rows[-1].mean_arith_ops:.1f} over {len(counters)} trials")
            logger.debug(f"Cell n={n} d={d} totals: {cell_total.to_dict()}")

    fit = fit_scaling(rows) if len(rows) >= MIN_FIT_CELLS else None
    if fit is not None:
        logger.info(f"Scaling fit: c1={fit.c1:.4f} c2={fit.c2:.2f} R^2={fit.r_squared:.4f}")
    return ScalingReport(rows=tuple(rows), fit=fit, seed=seed, variances=variances, excluded=excluded)
