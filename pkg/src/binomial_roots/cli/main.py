# ABOUTME: Entry point of the binom command-line tool
# ABOUTME: Parses flags into a CliConfig, sets up logging and dispatches to a subcommand handler

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from binomial_roots import __version__
from binomial_roots.cli.commands import EXIT_ERROR, run
from binomial_roots.cli.config import CliConfig
from binomial_roots.prob.report import EXPERIMENTS
from binomial_roots.utils.logging_utils import init_logging

logger = logging.getLogger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits with status 2, which is reserved for "no real root"
    def error(self, message):
        raise ValueError(message)


def parse_grid(text: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """`"2,4,8,16:2,256,65536"` -> ((2, 4, 8, 16), (2, 256, 65536))."""
    try:
        n_part, d_part = text.split(":")
        n_list = tuple(int(v) for v in n_part.split(","))
        d_list = tuple(int(v) for v in d_part.split(","))
    except ValueError as e:
        raise ValueError(f"--grid must look like 'n1,n2,...:d1,d2,...', got {text!r}.") from e
    return n_list, d_list


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="binom", description="Certified real roots of binomial systems")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    common = _ArgumentParser(add_help=False)
    common.add_argument("--input", type=Path, help="Input JSON document (stdin when omitted)")
    common.add_argument("--output", type=Path, help="Output file (stdout when omitted)")
    common.add_argument("--seed", type=int, help="Base seed of randomized commands")
    common.add_argument("--precision-bits", type=int, help="Fixed total precision, overriding the budget")
    common.add_argument("--tolerance", type=float, help="Log-residual tolerance of certification")
    common.add_argument("--config", type=Path, help="YAML file with a `solver:` section")
    common.add_argument("--workers", type=int, default=1, help="Worker threads for bench and prob")
    common.add_argument(
        "--log-level", type=str.upper, default="WARNING", choices=LOG_LEVELS, help="Console log level"
    )
    common.add_argument("--log-file", type=Path, help="Also write DEBUG-level logs to this file")

    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("solve", parents=[common], help="Find a certified real root or decide there is none")
    commands.add_parser("decide", parents=[common], help="Print yes/no for real root existence")
    commands.add_parser("count", parents=[common], help="Print the number of real roots")
    commands.add_parser("oracle", parents=[common], help="Brute-force sign enumeration cross-check")
    commands.add_parser("gen", parents=[common], help="Sample a system from an ensemble spec")

    bench = commands.add_parser("bench", parents=[common], help="Operation-count scaling experiment")
    bench.add_argument("--grid", type=parse_grid, help="n values and d values, e.g. 2,4,8,16:2,256,65536")
    bench.add_argument("--trials", type=int, help="Trials per (n, d) cell")

    prob = commands.add_parser("prob", parents=[common], help="Probabilistic estimate experiments")
    prob.add_argument("--experiment", choices=EXPERIMENTS, required=True)
    prob.add_argument("--samples", type=int, default=100_000, help="Monte Carlo sample count")
    return parser


def parse_config(argv: Sequence[str] | None = None) -> CliConfig:
    args = build_parser().parse_args(argv)
    return CliConfig(
        command=args.command,
        input_path=args.input,
        output_path=args.output,
        precision_override=args.precision_bits,
        tolerance=args.tolerance,
        config_path=args.config,
        seed=args.seed,
        grid=getattr(args, "grid", None),
        trials=getattr(args, "trials", None),
        experiment=getattr(args, "experiment", None),
        samples=getattr(args, "samples", 100_000),
        workers=args.workers,
        log_level=args.log_level,
        log_file=args.log_file,
    )


def main(argv: Sequence[str] | None = None) -> int:
    """Main entry point for the binom tool."""
    try:
        config = parse_config(argv)
    except ValueError as e:
        print(f"binom: {e}", file=sys.stderr)
        return EXIT_ERROR

    init_logging(log_file=config.log_file, console_level=config.log_level)
    logger.debug(f"binom {__version__}: {config}")
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
