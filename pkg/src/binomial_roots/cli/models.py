# ABOUTME: Pydantic models for the JSON documents read and written by the command-line tool
# ABOUTME: Every document carries a schema_version; coefficients stay exact decimals

from decimal import Decimal
from typing import Any, Literal

from pydantic import BaseModel, Field, field_validator

from binomial_roots.arith.logsign import LogSign
from binomial_roots.bench.harness import DEFAULT_D_LIST, DEFAULT_N_LIST, MIN_TRIALS
from binomial_roots.core.solver import SolveResult
from binomial_roots.core.system import BinomialSystem
from binomial_roots.ensembles.gaussian import GaussianEnsemble

SCHEMA_VERSION = 1


class EquationModel(BaseModel):
    """One equation c0 + c1 * x^exponents = 0."""

    c0: Decimal
    c1: Decimal
    exponents: list[int] = Field(..., min_length=1, description="Exponent vector (column i of A)")


class SystemDocument(BaseModel):
    """Binomial system input and `gen` output."""

    schema_version: int = SCHEMA_VERSION
    equations: list[EquationModel] = Field(..., min_length=1)

    @field_validator("schema_version")
    @classmethod
    def check_version(cls, v: int) -> int:
        if v != SCHEMA_VERSION:
            raise ValueError(f"Unsupported schema_version {v}, expected {SCHEMA_VERSION}")
        return v

    def to_system(self) -> BinomialSystem:
        return BinomialSystem.from_equations([(eq.c0, eq.c1, eq.exponents) for eq in self.equations])

    @classmethod
    def from_system(cls, F: BinomialSystem) -> "SystemDocument":
        columns = F.A.columns()
        return cls(
            equations=[
                EquationModel(c0=c0, c1=c1, exponents=list(columns[i])) for i, (c0, c1) in enumerate(F.coefficients)
            ]
        )


class LogSignModel(BaseModel):
    sign: Literal[1, -1]
    log_abs: str

    @classmethod
    def from_logsign(cls, x: LogSign) -> "LogSignModel":
        return cls(**x.to_json())


class CertificateModel(BaseModel):
    passes: bool
    tolerance: float
    residuals: list[float]
    sign_ok: list[bool]
    contraction_ratios: list[list[float]]
    alpha: list[float | None]


class SmithModel(BaseModel):
    S: list[int]


class SolveOutput(BaseModel):
    """Result document of `solve`."""

    schema_version: int = SCHEMA_VERSION
    status: Literal["root_found", "no_real_root"]
    root: list[LogSignModel] | None = None
    native_root: list[float | None] | None = None
    certificate: CertificateModel | None = None
    smith: SmithModel
    precision_bits: int | None = None
    escalations: int | None = None

    @classmethod
    def from_result(cls, result: SolveResult) -> "SolveOutput":
        output: dict[str, Any] = {"status": result.status.value, "smith": SmithModel(S=list(result.smith.S))}
        if result.found:
            output.update(
                root=[LogSignModel.from_logsign(z) for z in result.root],
                native_root=[z.to_real() if z.fits_native else None for z in result.root],
                certificate=CertificateModel(**result.certificate.to_dict()),
                precision_bits=result.budget.total,
                escalations=result.escalations,
            )
        return cls(**output)


class OracleOutput(BaseModel):
    schema_version: int = SCHEMA_VERSION
    exists: bool
    count: int
    log_magnitudes: list[float]


class EnsembleSpec(BaseModel):
    """Sub-config of `gen`: {"n", "d", "variances": [[v10, v11], ...] | "unit", "seed"}."""

    schema_version: int = SCHEMA_VERSION
    n: int = Field(..., ge=1)
    d: int = Field(..., ge=1)
    variances: list[list[float]] | Literal["unit"] = "unit"
    seed: int = 0

    def to_ensemble(self, seed: int | None = None) -> GaussianEnsemble:
        spec = self.model_dump(exclude={"schema_version"})
        if seed is not None:
            spec["seed"] = seed
        return GaussianEnsemble.from_spec(spec)


class BenchSpec(BaseModel):
    """Sub-config of `bench`; `--grid` and `--trials` override the corresponding fields."""

    schema_version: int = SCHEMA_VERSION
    n_list: list[int] = Field(default_factory=lambda: list(DEFAULT_N_LIST), min_length=1)
    d_list: list[int] = Field(default_factory=lambda: list(DEFAULT_D_LIST), min_length=1)
    trials: int = Field(50, ge=MIN_TRIALS)
    variances: tuple[float, float] | None = Field(None, description="(v0, v1) shared by every equation")


class FitSummary(BaseModel):
    """JSON summary written next to the bench CSV."""

    schema_version: int = SCHEMA_VERSION
    model: str
    seed: int
    cells: int
    fit: dict[str, float] | None
    growth_ratios: dict[str, list[tuple[int, float]]]
    excluded_trials: dict[str, int]
