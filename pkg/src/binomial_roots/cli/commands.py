# ABOUTME: Subcommand handlers of the binom tool; each returns the process exit code
# ABOUTME: Exit 0 on a root (or yes / positive count), 2 when there is no real root, 1 on any error

import json
import logging
import sys
from collections.abc import Callable
from decimal import Decimal
from pathlib import Path
from typing import Any

from binomial_roots.bench.harness import run_scaling
from binomial_roots.bench.report import fit_summary_json, write_scaling_csv
from binomial_roots.cli.config import CliConfig
from binomial_roots.cli.models import (
    BenchSpec,
    EnsembleSpec,
    FitSummary,
    OracleOutput,
    SolveOutput,
    SystemDocument,
)
from binomial_roots.core.oracle import sign_enumeration_oracle
from binomial_roots.core.solver import count_real_roots, has_real_root, solve
from binomial_roots.core.system import BinomialSystem
from binomial_roots.ensembles.gaussian import sample_system
from binomial_roots.prob.report import run_experiment, write_experiment_csv
from binomial_roots.utils.errors import BinomialRootsError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NO_ROOT = 2


def read_document(path: Path | None) -> Any:
    """JSON from `path` (stdin when None) with every non-integer number kept as a Decimal."""
    text = path.read_text() if path is not None else sys.stdin.read()
    return json.loads(text, parse_float=Decimal)


def write_text(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text + "\n")
    else:
        path.write_text(text + "\n")


def load_system(path: Path | None) -> BinomialSystem:
    return SystemDocument.model_validate(read_document(path)).to_system()


def cmd_solve(config: CliConfig) -> int:
    F = load_system(config.input_path)
    result = solve(F, config.solver_config())
    write_text(SolveOutput.from_result(result).model_dump_json(indent=2), config.output_path)
    return EXIT_OK if result.found else EXIT_NO_ROOT


def cmd_decide(config: CliConfig) -> int:
    exists = has_real_root(load_system(config.input_path))
    write_text("yes" if exists else "no", config.output_path)
    return EXIT_OK if exists else EXIT_NO_ROOT


def cmd_count(config: CliConfig) -> int:
    count = count_real_roots(load_system(config.input_path))
    write_text(str(count), config.output_path)
    return EXIT_OK if count > 0 else EXIT_NO_ROOT


def cmd_oracle(config: CliConfig) -> int:
    answer = sign_enumeration_oracle(load_system(config.input_path))
    output = OracleOutput(exists=answer.exists, count=answer.count, log_magnitudes=list(answer.log_magnitudes))
    write_text(output.model_dump_json(indent=2), config.output_path)
    return EXIT_OK if answer.exists else EXIT_NO_ROOT


def cmd_gen(config: CliConfig) -> int:
    spec = EnsembleSpec.model_validate(read_document(config.input_path))
    ensemble = spec.to_ensemble(config.seed)
    F = sample_system(ensemble)
    logger.info(f"Sampled system n={ensemble.n} d={ensemble.d} seed={ensemble.seed}")
    write_text(SystemDocument.from_system(F).model_dump_json(indent=2), config.output_path)
    return EXIT_OK


def cmd_bench(config: CliConfig) -> int:
    document = read_document(config.input_path) if config.input_path is not None else {}
    spec = BenchSpec.model_validate(document)
    updates: dict[str, Any] = {}
    if config.grid is not None:
        updates.update(n_list=list(config.grid[0]), d_list=list(config.grid[1]))
    if config.trials is not None:
        updates["trials"] = config.trials
    spec = BenchSpec.model_validate({**spec.model_dump(), **updates})

    report = run_scaling(
        spec.n_list,
        spec.d_list,
        trials=spec.trials,
        seed=config.seed or 0,
        variances=spec.variances,
        workers=config.workers,
        config=config.solver_config(),
    )
    summary = FitSummary(**fit_summary_json(report))
    if config.output_path is None:
        write_scaling_csv(report, sys.stdout)
        logger.info(f"Fit summary: {summary.model_dump_json()}")
    else:
        write_scaling_csv(report, config.output_path)
        summary_path = config.output_path.with_suffix(".fit.json")
        summary_path.write_text(summary.model_dump_json(indent=2) + "\n")
        logger.info(f"Wrote {config.output_path} and {summary_path}")
    return EXIT_OK


def cmd_prob(config: CliConfig) -> int:
    rows = run_experiment(config.experiment, config.samples, config.seed or 0, config.workers)
    if config.output_path is None:
        write_experiment_csv(rows, sys.stdout)
    else:
        write_experiment_csv(rows, config.output_path)
        # The headline value still goes to stdout
        print(f"{rows[0].experiment} {rows[0].estimate!r}")
    return EXIT_OK


HANDLERS: dict[str, Callable[[CliConfig], int]] = {
    "solve": cmd_solve,
    "decide": cmd_decide,
    "count": cmd_count,
    "oracle": cmd_oracle,
    "gen": cmd_gen,
    "bench": cmd_bench,
    "prob": cmd_prob,
}


def run(config: CliConfig) -> int:
    """Dispatch to the handler of `config.command`, mapping every failure to exit code 1."""
    try:
        return HANDLERS[config.command](config)
    except (BinomialRootsError, ValueError, ArithmeticError, OSError) as e:
        message = e.message if isinstance(e, BinomialRootsError) else str(e)
        logger.debug(f"{config.command} failed", exc_info=True)
        print(f"binom {config.command}: {type(e).__name__}: {message}", file=sys.stderr)
        return EXIT_ERROR
