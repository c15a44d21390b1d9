# ABOUTME: Named probabilistic experiments and their CSV report rows
# ABOUTME: Columns: experiment, param-json, estimate, ci_lo, ci_hi, bound_lo, bound_hi, samples, seed

import csv
import json
import logging
import math
from collections.abc import Iterable
from dataclasses import astuple, dataclass, fields
from pathlib import Path
from typing import IO

from binomial_roots.prob.distributions import A_CLOSED_FORM, TAU2_CLOSED_FORM
from binomial_roots.prob.loglog import loglog_expectation, loglog_single_gaussian, single_gaussian_tail_check
from binomial_roots.prob.montecarlo import constant_a_monte_carlo, variance_tau2_monte_carlo
from binomial_roots.prob.quadrature import constant_a, laplace_moment_ratio, moment_ratio_W, variance_tau2
from binomial_roots.prob.tails import (
    TailExperimentConfig,
    fit_tail_curve,
    logconcave_tail_check,
    moment_bracket_check,
    sample_unit_direction,
    tail_linear_combination,
)

logger = logging.getLogger(__name__)

EXPERIMENTS = ("constant-a", "tau2", "moment-ratio", "tail", "loglog", "loglog-single", "logconcave", "bracket")
HALF_SQRT2 = 1 / math.sqrt(2)


@dataclass(frozen=True)
class ExperimentRow:
    experiment: str
    params: str
    estimate: float
    ci_lo: float | None = None
    ci_hi: float | None = None
    bound_lo: float | None = None
    bound_hi: float | None = None
    samples: int | None = None
    seed: int | None = None


CSV_HEADER = ["experiment", "param-json", *[f.name for f in fields(ExperimentRow)][2:]]


def _params(**kwargs) -> str:
    return json.dumps(kwargs, sort_keys=True)


def write_experiment_csv(rows: Iterable[ExperimentRow], out: Path | str | IO[str]) -> None:
    if isinstance(out, (str, Path)):
        with open(out, "w", newline="") as f:
            write_experiment_csv(rows, f)
        return
    writer = csv.writer(out)
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(["" if v is None else v for v in astuple(row)])


def _constant_a(samples: int, seed: int, workers: int) -> list[ExperimentRow]:
    value = constant_a()
    mc = constant_a_monte_carlo(samples, seed, workers)
    return [
        ExperimentRow("constant-a", _params(method="quadrature"), value, bound_lo=A_CLOSED_FORM, bound_hi=A_CLOSED_FORM),
        ExperimentRow("constant-a", _params(method="monte-carlo"), mc.estimate, *mc.ci, samples=mc.samples, seed=seed),
    ]


def _tau2(samples: int, seed: int, workers: int) -> list[ExperimentRow]:
    mc = variance_tau2_monte_carlo(samples, seed, workers)
    return [
        ExperimentRow(
            "tau2", _params(method="quadrature"), variance_tau2(), bound_lo=TAU2_CLOSED_FORM, bound_hi=TAU2_CLOSED_FORM
        ),
        ExperimentRow("tau2", _params(method="monte-carlo"), mc.estimate, *mc.ci, samples=mc.samples, seed=seed),
    ]


def _moment_ratio(samples: int, seed: int, workers: int) -> list[ExperimentRow]:
    rows = [ExperimentRow("moment-ratio", _params(p=p), moment_ratio_W(p)) for p in range(2, 17, 2)]
    # ||Theta||_p / ||L||_p is exactly 1 for every even p
    rows += [
        ExperimentRow(
            "moment-ratio", _params(p=p, law="laplace"), laplace_moment_ratio(p), bound_lo=1.0, bound_hi=1.0
        )
        for p in (2, 8, 16)
    ]
    return rows


def _tail(samples: int, seed: int, workers: int) -> list[ExperimentRow]:
    rows = []
    for dim in (1, 4, 16):
        theta = sample_unit_direction(dim, seed + dim)
        cfg = TailExperimentConfig(theta, samples=max(samples, 10_000), seed=seed, workers=workers)
        table = tail_linear_combination(cfg, [1.0, 2.0, 3.0, 4.0, 5.0])
        fit = fit_tail_curve(table, theta)
        for r in table:
            rows.append(
                ExperimentRow(
                    "tail",
                    _params(dim=dim, t=r.t, C=fit.C, C_prime=fit.C_prime),
                    r.probability,
                    r.ci_lo,
                    r.ci_hi,
                    bound_hi=fit(r.t),
                    samples=r.samples,
                    seed=seed,
                )
            )
    return rows


def _loglog_row(d: float, samples: int, seed: int, workers: int) -> ExperimentRow:
    cfg = TailExperimentConfig((HALF_SQRT2, -HALF_SQRT2), d=d, samples=samples, seed=seed, workers=workers)
    est = loglog_expectation(cfg)
    return ExperimentRow(
        "loglog",
        _params(a=list(cfg.weights), d=d),
        est.estimate,
        *est.ci,
        est.lower_bound,
        est.upper_bound,
        est.samples,
        seed,
    )


def _loglog(samples: int, seed: int, workers: int) -> list[ExperimentRow]:
    return [_loglog_row(100.0, samples, seed, workers)]


def _loglog_single(samples: int, seed: int, workers: int) -> list[ExperimentRow]:
    rows = []
    for d in (math.e**2, 100.0, 1e4):
        est = loglog_single_gaussian(d, samples, seed, workers)
        rows.append(
            ExperimentRow(
                "loglog-single",
                _params(d=d),
                est.estimate,
                *est.ci,
                est.lower_bound,
                est.upper_bound,
                est.samples,
                seed,
            )
        )
    for r in single_gaussian_tail_check(samples=samples, seed=seed, workers=workers):
        rows.append(
            ExperimentRow(
                "loglog-single",
                _params(t=r.t),
                r.probability,
                r.ci_lo,
                r.ci_hi,
                bound_hi=r.bound,
                samples=r.samples,
                seed=seed,
            )
        )
    return rows


def _logconcave(samples: int, seed: int, workers: int) -> list[ExperimentRow]:
    cfg = TailExperimentConfig((HALF_SQRT2, -HALF_SQRT2), samples=samples, seed=seed, workers=workers)
    return [
        ExperimentRow(
            "logconcave",
            _params(a=list(cfg.weights), s=r.t),
            r.probability,
            r.ci_lo,
            r.ci_hi,
            bound_hi=r.bound,
            samples=r.samples,
            seed=seed,
        )
        for r in logconcave_tail_check(cfg)
    ]


def _bracket(samples: int, seed: int, workers: int) -> list[ExperimentRow]:
    rows = [_loglog_row(d, samples, seed, workers) for d in (math.e**2, 100.0, 1e4)]
    theta = sample_unit_direction(8, seed)
    for r in moment_bracket_check(theta, samples=samples, seed=seed):
        rows.append(
            ExperimentRow(
                "bracket", _params(p=r.p, dim=8), r.ratio, bound_lo=0.02, bound_hi=50.0, samples=samples, seed=seed
            )
        )
    return rows


_RUNNERS = {
    "constant-a": _constant_a,
    "tau2": _tau2,
    "moment-ratio": _moment_ratio,
    "tail": _tail,
    "loglog": _loglog,
    "loglog-single": _loglog_single,
    "logconcave": _logconcave,
    "bracket": _bracket,
}


def run_experiment(name: str, samples: int = 100_000, seed: int = 0, workers: int = 1) -> list[ExperimentRow]:
    """Run one named experiment and return its report rows."""
    if name not in _RUNNERS:
        raise ValueError(f"Unknown experiment {name!r}; choose one of {', '.join(EXPERIMENTS)}.")
    logger.info(f"Running experiment {name} with {samples} samples, seed {seed}")
    return _RUNNERS[name](samples, seed, workers)
