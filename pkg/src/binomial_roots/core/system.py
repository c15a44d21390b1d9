# ABOUTME: Binomial systems c0 + c1 * x^(a_i) = 0 and their diagonal forms z_i^(s_i) = gamma_i
# ABOUTME: Coefficients are kept as exact decimals and converted to log-sign form at the precision asked for

from collections.abc import Sequence
from dataclasses import dataclass
from decimal import Decimal, localcontext

from binomial_roots.arith.logsign import LogSign, div, from_real, neg
from binomial_roots.linalg.matrix import ExponentMatrix
from binomial_roots.linalg.smith import SmithFactorization
from binomial_roots.utils.errors import NonFiniteError, ZeroCoefficientError

CoefficientLike = Decimal | int | float | str


def to_decimal(value: CoefficientLike) -> Decimal:
    """Exact decimal for a coefficient; floats go through their shortest repr."""
    if isinstance(value, bool):
        raise TypeError("Booleans are not coefficients.")
    if isinstance(value, float):
        value = repr(value)
    result = Decimal(value)
    if not result.is_finite():
        raise NonFiniteError(f"Coefficient {value!r} is not finite.")
    return result


@dataclass(frozen=True)
class BinomialSystem:
    """The system `c[i][0] + c[i][1] * x^(column i of A) = 0`, i = 1..n."""

    A: ExponentMatrix
    coefficients: tuple[tuple[Decimal, Decimal], ...]

    def __post_init__(self):
        A = self.A if isinstance(self.A, ExponentMatrix) else ExponentMatrix(self.A)
        coefficients = tuple((to_decimal(c0), to_decimal(c1)) for c0, c1 in self.coefficients)
        if len(coefficients) != A.n:
            raise ValueError(f"Expected {A.n} coefficient pairs, got {len(coefficients)}.")
        for i, (c0, c1) in enumerate(coefficients):
            if c0.is_zero() or c1.is_zero():
                raise ZeroCoefficientError(f"Equation {i} has a zero coefficient: ({c0}, {c1}).")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "coefficients", coefficients)

    @classmethod
    def from_equations(
        cls, equations: Sequence[tuple[CoefficientLike, CoefficientLike, Sequence[int]]]
    ) -> "BinomialSystem":
        """Build from `(c0, c1, exponents)` triples, one per equation."""
        if not equations:
            raise ValueError("A system needs at least one equation.")
        columns = [exponents for _, _, exponents in equations]
        return cls(ExponentMatrix.from_columns(columns), tuple((c0, c1) for c0, c1, _ in equations))

    @property
    def n(self) -> int:
        return self.A.n

    def ratio(self, i: int, precision: int) -> LogSign:
        """`-c0 / c1` of equation i in log-sign form."""
        c0, c1 = self.coefficients[i]
        return div(neg(from_real(c0, precision)), from_real(c1, precision))

    def ratios(self, precision: int) -> list[LogSign]:
        return [self.ratio(i, precision) for i in range(self.n)]

    def ratio_signs(self) -> tuple[int, ...]:
        return tuple(-1 if (c0 < 0) == (c1 < 0) else 1 for c0, c1 in self.coefficients)

    def log_ratio_magnitudes(self) -> tuple[float, ...]:
        """`log|c0/c1|` per equation, as floats."""
        with localcontext() as ctx:
            ctx.prec = 34
            return tuple(float(abs(c0).ln() - abs(c1).ln()) for c0, c1 in self.coefficients)

    @property
    def sigma(self) -> float:
        """Largest |log| of a coefficient ratio."""
        return max(abs(v) for v in self.log_ratio_magnitudes())


@dataclass(frozen=True)
class DiagonalSystem:
    """`z_i^(s_i) = gamma_i` for i = 1..n, with the factorization it came from."""

    exponents: tuple[int, ...]
    targets: tuple[LogSign, ...]
    provenance: SmithFactorization | None = None

    def __post_init__(self):
        exponents = tuple(int(s) for s in self.exponents)
        targets = tuple(self.targets)
        if len(exponents) != len(targets):
            raise ValueError(f"{len(exponents)} exponents but {len(targets)} targets.")
        if any(s < 1 for s in exponents):
            raise ValueError(f"Diagonal exponents must be positive, got {exponents}.")
        if any(exponents[i + 1] % exponents[i] for i in range(len(exponents) - 1)):
            raise ValueError(f"Diagonal exponents must form a divisibility chain, got {exponents}.")
        object.__setattr__(self, "exponents", exponents)
        object.__setattr__(self, "targets", targets)

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def precision(self) -> int:
        return max(t.precision for t in self.targets)

    @property
    def max_log_target(self) -> float:
        return max(abs(float(t.logabs)) for t in self.targets)

    def real_root_count(self) -> int:
        count = 1
        for s, gamma in zip(self.exponents, self.targets):
            if s % 2 == 0:
                count *= 2 if gamma.sign > 0 else 0
        return count
