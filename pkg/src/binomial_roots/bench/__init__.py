# ABOUTME: Operation counting and the average-case scaling experiment
# ABOUTME: Reports are written as per-cell CSV plus a JSON fit summary

from .harness import (
    CountedSolve,
    ScalingFit,
    ScalingReport,
    ScalingRow,
    count_solve,
    fit_scaling,
    model_feature,
    run_scaling,
)
from .report import fit_summary_json, write_scaling_csv

__all__ = [
    "CountedSolve",
    "ScalingFit",
    "ScalingReport",
    "ScalingRow",
    "count_solve",
    "fit_scaling",
    "fit_summary_json",
    "model_feature",
    "run_scaling",
    "write_scaling_csv",
]
