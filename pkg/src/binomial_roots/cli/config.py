# ABOUTME: Parsed command-line configuration shared by every subcommand handler
# ABOUTME: Turns file, environment and flag settings into one SolverConfig

from dataclasses import dataclass, replace
from pathlib import Path

from binomial_roots.core.config import SolverConfig, load_solver_config
from binomial_roots.prob.report import EXPERIMENTS

COMMANDS = ("solve", "decide", "count", "oracle", "gen", "bench", "prob")


@dataclass
class CliConfig:
    """One invocation of the `binom` tool."""

    command: str
    input_path: Path | None = None
    output_path: Path | None = None

    # Overrides of the solver settings (file < environment < flags)
    precision_override: int | None = None
    tolerance: float | None = None
    config_path: Path | None = None

    seed: int | None = None

    # bench
    grid: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    trials: int | None = None

    # prob
    experiment: str | None = None
    samples: int = 100_000

    workers: int = 1
    log_level: str = "WARNING"
    log_file: Path | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"Unknown command {self.command!r}; choose one of {', '.join(COMMANDS)}.")
        if self.input_path is not None and not self.input_path.is_file():
            raise ValueError(f"Input file {self.input_path} does not exist.")
        if self.output_path is not None and not self.output_path.parent.is_dir():
            raise ValueError(f"Output directory {self.output_path.parent} does not exist.")
        if self.log_file is not None and not self.log_file.parent.is_dir():
            raise ValueError(f"Log directory {self.log_file.parent} does not exist.")
        if self.command == "prob" and self.experiment not in EXPERIMENTS:
            raise ValueError(f"`prob` needs --experiment, one of {', '.join(EXPERIMENTS)}; got {self.experiment!r}.")
        if self.workers < 1:
            raise ValueError(f"`workers` must be positive, got {self.workers}.")
        if self.samples < 1:
            raise ValueError(f"`samples` must be positive, got {self.samples}.")

    def solver_config(self) -> SolverConfig:
        config = load_solver_config(self.config_path)
        if self.precision_override is not None:
            config = replace(config, precision_bits=self.precision_override)
        if self.tolerance is not None:
            config = replace(config, tolerance=self.tolerance)
        return config
