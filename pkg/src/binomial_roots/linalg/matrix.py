# ABOUTME: Exact integer matrices: the exponent matrix type, Bareiss determinant and small helpers
# ABOUTME: Matrices are tuples of tuples of Python ints so they are immutable and unbounded

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import TypeAlias

from binomial_roots.utils.errors import SingularMatrixError

IntMatrix: TypeAlias = tuple[tuple[int, ...], ...]


def _as_int(value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        if isinstance(value, float) and value.is_integer():
            return int(value)
        raise TypeError(f"Exponent entries must be integers, got {value!r}.")
    return value


def as_int_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    matrix = tuple(tuple(_as_int(v) for v in row) for row in rows)
    if matrix and any(len(row) != len(matrix[0]) for row in matrix):
        raise ValueError("All matrix rows must have the same length.")
    return matrix


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(zip(*m)) if m else ()


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if a and len(a[0]) != len(b):
        raise ValueError(f"Cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0]) if b else 0}.")
    columns = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in columns) for row in a)


def diagonal(values: Sequence[int]) -> IntMatrix:
    n = len(values)
    return tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n))


def max_abs_entry(m: Sequence[Sequence[int]]) -> int:
    return max((abs(v) for row in m for v in row), default=0)


def determinant(matrix: "ExponentMatrix | Sequence[Sequence[int]]") -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    rows = matrix.entries if isinstance(matrix, ExponentMatrix) else matrix
    m = [list(row) for row in rows]
    n = len(m)
    if n == 0:
        return 1
    if any(len(row) != n for row in m):
        raise ValueError("Determinant is only defined for square matrices.")

    sign = 1
    previous_pivot = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Exact division: Sylvester's identity guarantees divisibility
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // previous_pivot
        previous_pivot = pivot
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class ExponentMatrix:
    """Square integer matrix whose column i is the exponent vector of equation i.

    Construction rejects singular matrices.
    """

    entries: IntMatrix
    det: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        entries = as_int_matrix(self.entries)
        n = len(entries)
        if n == 0:
            raise ValueError("An exponent matrix needs at least one row.")
        if any(len(row) != n for row in entries):
            raise ValueError(f"Exponent matrix must be square, got {n} rows of lengths {[len(r) for r in entries]}.")
        det = determinant(entries)
        if det == 0:
            raise SingularMatrixError(f"Exponent matrix {entries} is singular.")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "det", det)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> "ExponentMatrix":
        return cls(transpose(as_int_matrix(columns)))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def max_abs_entry(self) -> int:
        return max_abs_entry(self.entries)

    def column(self, i: int) -> tuple[int, ...]:
        return tuple(row[i] for row in self.entries)

    def columns(self) -> IntMatrix:
        return transpose(self.entries)

    def __getitem__(self, index: int) -> tuple[int, ...]:
        return self.entries[index]

    def __len__(self) -> int:
        return self.n
