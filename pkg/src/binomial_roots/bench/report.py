# ABOUTME: Scaling report output: one CSV row per (n, d) cell and a JSON summary of the fit
# ABOUTME: CSV columns: n, d, trials, failed, mean_arith_ops, stddev, mean_snf_proxy, wall_time

import csv
from dataclasses import astuple, fields
from pathlib import Path
from typing import IO, Any

from binomial_roots.bench.harness import ScalingReport, ScalingRow

SCHEMA_VERSION = 1
CSV_HEADER = [f.name for f in fields(ScalingRow)]


def write_scaling_csv(report: ScalingReport, out: Path | str | IO[str]) -> None:
    if isinstance(out, (str, Path)):
        with open(out, "w", newline="") as f:
            write_scaling_csv(report, f)
        return
    writer = csv.writer(out)
    writer.writerow(CSV_HEADER)
    for row in report.rows:
        writer.writerow(astuple(row))


def fit_summary_json(report: ScalingReport) -> dict[str, Any]:
    fit = report.fit
    return {
        "schema_version": SCHEMA_VERSION,
        "model": "c1 * n^2 * log(n*d) + c2",
        "seed": report.seed,
        "cells": len(report.rows),
        "fit": None if fit is None else {"c1": fit.c1, "c2": fit.c2, "r_squared": fit.r_squared},
        "growth_ratios": {str(d): [[n, ratio] for n, ratio in pairs] for d, pairs in report.growth_ratios().items()},
        "excluded_trials": dict(report.excluded),
    }
