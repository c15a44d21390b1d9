# ABOUTME: Solver configuration dataclass and its YAML loader
# ABOUTME: Overrides from the file and the environment are logged against the built-in defaults

import logging
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

import yaml
from deepdiff import DeepDiff

logger = logging.getLogger(__name__)

PRECISION_ENV_VAR = "BINOM_DEFAULT_PRECISION"
ALPHA_THRESHOLD = 0.157671


@dataclass(frozen=True)
class SolverConfig:
    """Solver tuning parameters."""

    # Log-residual tolerance at the initial precision budget
    tolerance: float = 1e-9

    # Precision doublings tried before giving up on certification
    max_escalations: int = 3

    # Precision budget floors and guards, in bits
    fraction_floor: int = 32
    integer_guard_bits: int = 8
    integer_floor: int = 16

    # Fixed total precision, bypassing the budget (None = use the budget)
    precision_bits: int | None = None

    # Certification
    certify_newton_steps: int = 4
    alpha_threshold: float = ALPHA_THRESHOLD

    def __post_init__(self):
        if not 0 < self.tolerance < 1:
            raise ValueError(f"`tolerance` must lie in (0, 1), got {self.tolerance}.")
        if self.max_escalations < 0:
            raise ValueError(f"`max_escalations` must be nonnegative, got {self.max_escalations}.")
        if self.fraction_floor < 32:
            raise ValueError(f"`fraction_floor` must be at least 32 bits, got {self.fraction_floor}.")
        if self.precision_bits is not None and self.precision_bits < 48:
            raise ValueError(f"`precision_bits` must be at least 48, got {self.precision_bits}.")
        if self.certify_newton_steps < 1:
            raise ValueError(f"`certify_newton_steps` must be positive, got {self.certify_newton_steps}.")

    @classmethod
    def from_env(cls, base: "SolverConfig | None" = None) -> "SolverConfig":
        """Apply `BINOM_DEFAULT_PRECISION` (fraction-bit floor) on top of `base`."""
        base = base or cls()
        value = os.environ.get(PRECISION_ENV_VAR)
        if not value:
            return base
        try:
            floor = int(value)
        except ValueError as e:
            raise ValueError(f"{PRECISION_ENV_VAR} must be an integer number of bits, got {value!r}.") from e
        logger.info(f"{PRECISION_ENV_VAR}={floor} overrides the fraction-bit floor")
        return replace(base, fraction_floor=max(32, floor))


def load_solver_config(path: Path | str | None = None) -> SolverConfig:
    """Read solver settings from the `solver:` section of a YAML file, then apply the environment.

    Unknown keys are rejected so that typos do not pass silently.
    """
    config = SolverConfig()
    if path is not None:
        with open(path) as f:
            document = yaml.safe_load(f) or {}
        section = document.get("solver", document)
        known = {f.name for f in fields(SolverConfig)}
        unknown = set(section) - known
        if unknown:
            raise ValueError(f"Unknown solver settings in {path}: {sorted(unknown)}")
        config = SolverConfig(**section)

        diff = DeepDiff(asdict(SolverConfig()), asdict(config))
        for change, detail in diff.get("values_changed", {}).items():
            logger.info(f"Solver setting {change} overridden: {detail['old_value']} -> {detail['new_value']}")
        for change in diff.get("type_changes", {}):
            logger.info(f"Solver setting {change} overridden in {path}")

    return SolverConfig.from_env(config)
