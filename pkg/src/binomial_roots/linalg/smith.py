# ABOUTME: Smith normal form with unimodular multipliers and their inverses, plus an exact checker
# ABOUTME: A Hermite pass by column operations comes first, then minimal-pivot elimination on what is left

import logging
from collections.abc import Sequence
from dataclasses import dataclass

from binomial_roots.linalg.matrix import ExponentMatrix, IntMatrix, determinant, diagonal, identity, matmul
from binomial_roots.utils.counters import active_counter, record

logger = logging.getLogger(__name__)

WORD_BITS = 64


@dataclass(frozen=True)
class SmithFactorization:
    """Unimodular `U`, `V` and diagonal `S` with `U @ A @ V == diag(S)`.

    `U_inverse` and `V_inverse` are derived exactly from `A`, `U`, `V` and `S`; they are optional so
    that hand-made (possibly invalid) factorizations can be checked.
    """

    U: IntMatrix
    V: IntMatrix
    S: tuple[int, ...]
    U_inverse: IntMatrix | None = None
    V_inverse: IntMatrix | None = None

    @property
    def n(self) -> int:
        return len(self.S)

    @property
    def max_exponent(self) -> int:
        """Largest diagonal entry or multiplier entry a solve raises values to."""
        entries = [abs(v) for m in (self.U, self.V) for row in m for v in row]
        return max([*self.S, *entries])


def _words(value: int) -> int:
    return max(1, -(-abs(value).bit_length() // WORD_BITS))


def _bezout(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with x * a + y * b == g == gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class _Elimination:
    """Mutable working state: the reduced matrix and the row/column multipliers U and V."""

    def __init__(self, entries: IntMatrix, charge: bool):
        n = len(entries)
        self.n = n
        self.m = [list(row) for row in entries]
        self.u = [list(row) for row in identity(n)]
        self.v = [list(row) for row in identity(n)]
        self.charge = charge
        self.operations = 0

    def _cost(self, q: int, vectors: Sequence[Sequence[int]]) -> None:
        self.operations += 1
        if self.charge:
            wq = _words(q)
            record(snf_bitop_proxy=sum(wq * _words(v) for vec in vectors for v in vec))

    def _column(self, mat: list[list[int]], j: int) -> list[int]:
        return [row[j] for row in mat]

    def swap_rows(self, a: int, b: int) -> None:
        if a == b:
            return
        for mat in (self.m, self.u):
            mat[a], mat[b] = mat[b], mat[a]

    def swap_columns(self, a: int, b: int) -> None:
        if a == b:
            return
        for mat in (self.m, self.v):
            for row in mat:
                row[a], row[b] = row[b], row[a]

    def add_row(self, target: int, source: int, q: int) -> None:
        """row[target] += q * row[source]."""
        self._cost(q, (self.m[source], self.u[source]))
        for mat in (self.m, self.u):
            src, dst = mat[source], mat[target]
            for j in range(self.n):
                dst[j] += q * src[j]

    def add_column(self, target: int, source: int, q: int) -> None:
        """column[target] += q * column[source]."""
        self._cost(q, (self._column(self.m, source), self._column(self.v, source)))
        for mat in (self.m, self.v):
            for row in mat:
                row[target] += q * row[source]

    def combine_columns(self, i: int, j: int, x: int, y: int, p: int, q: int) -> None:
        """(col i, col j) <- (x col i + y col j, p col i + q col j); requires x q - y p == 1."""
        size = max(abs(x), abs(y), abs(p), abs(q))
        self._cost(size, (self._column(self.m, i), self._column(self.m, j), self._column(self.v, i)))
        for mat in (self.m, self.v):
            for row in mat:
                a, b = row[i], row[j]
                row[i], row[j] = x * a + y * b, p * a + q * b

    def negate_row(self, t: int) -> None:
        for mat in (self.m, self.u):
            mat[t] = [-v for v in mat[t]]

    def negate_column(self, t: int) -> None:
        for mat in (self.m, self.v):
            for row in mat:
                row[t] = -row[t]

    def hermite(self) -> None:
        """Column operations only: lower triangular, positive diagonal, each row reduced left of its pivot.

        `A @ V` is then the Hermite form `H`, so `V == A^-1 @ H` whatever path the elimination took;
        its entries are bounded by n times the largest (n-1)-minor of `A`.
        """
        for i in range(self.n):
            row = self.m[i]
            for j in range(i + 1, self.n):
                if row[j] == 0:
                    continue
                a, b = row[i], row[j]
                g, x, y = _bezout(a, b)
                self.combine_columns(i, j, x, y, -b // g, a // g)
            if row[i] < 0:
                self.negate_column(i)
            pivot = row[i]
            for j in range(i):
                q = row[j] // pivot
                if q:
                    self.add_column(j, i, -q)

    def clear_unit_pivots(self) -> None:
        """Zero the column below every unit pivot of the Hermite form.

        A unit pivot's row is already e_i (its left part is reduced modulo 1), so each update only
        touches the cleared entry; U picks up entries smaller than the pivots of their rows.
        """
        for i in range(self.n):
            if self.m[i][i] != 1:
                continue
            for k in range(i + 1, self.n):
                q = self.m[k][i]
                if q:
                    self.add_row(k, i, -q)

    def smallest_entry(self, t: int) -> tuple[int, int]:
        best = None
        for i in range(t, self.n):
            for j in range(t, self.n):
                v = self.m[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        return best[1], best[2]

    def reduce_block(self, t: int) -> None:
        """Leave a pivot at (t, t) that divides every entry of the trailing block, zeros around it."""
        while True:
            i, j = self.smallest_entry(t)
            self.swap_rows(t, i)
            self.swap_columns(t, j)
            pivot = self.m[t][t]

            cleared = True
            for i in range(t + 1, self.n):
                q = self.m[i][t] // pivot
                if q:
                    self.add_row(i, t, -q)
                cleared = cleared and self.m[i][t] == 0
            for j in range(t + 1, self.n):
                q = self.m[t][j] // pivot
                if q:
                    self.add_column(j, t, -q)
                cleared = cleared and self.m[t][j] == 0
            if not cleared:
                continue

            offender = next(
                (i for i in range(t + 1, self.n) for j in range(t + 1, self.n) if self.m[i][j] % pivot), None
            )
            if offender is None:
                break
            # Pull the non-divisible row into row t; the next pass finds a smaller pivot
            self.add_row(t, offender, 1)

        if self.m[t][t] < 0:
            self.negate_row(t)

    def freeze(self, A: IntMatrix) -> SmithFactorization:
        def frozen(mat):
            return tuple(tuple(row) for row in mat)

        S = tuple(self.m[i][i] for i in range(self.n))
        U, V = frozen(self.u), frozen(self.v)
        # U A V = S gives U^-1 = A V S^-1 and V^-1 = S^-1 U A, both exact
        AV = matmul(A, V)
        UA = matmul(U, A)
        return SmithFactorization(
            U=U,
            V=V,
            S=S,
            U_inverse=tuple(tuple(AV[i][j] // S[j] for j in range(self.n)) for i in range(self.n)),
            V_inverse=tuple(tuple(v // S[i] for v in UA[i]) for i in range(self.n)),
        )


def smith_normal_form(matrix: ExponentMatrix | Sequence[Sequence[int]]) -> SmithFactorization:
    """Compute the Smith normal form of a nonsingular integer matrix together with its multipliers.

    Multiplier entries stay within O(n log(n d)) bits for entries bounded by d: V starts as the
    unique transform to the Hermite form, and the elimination after it only works on the rows and
    columns whose Hermite pivots exceed 1.

    Raises:
        SingularMatrixError: `matrix` has determinant 0.
    """
    A = matrix if isinstance(matrix, ExponentMatrix) else ExponentMatrix(matrix)
    work = _Elimination(A.entries, charge=active_counter() is not None)
    work.hermite()
    work.clear_unit_pivots()
    for t in range(A.n):
        work.reduce_block(t)
    factorization = work.freeze(A.entries)
    logger.debug(f"Smith form of {A.n}x{A.n} matrix: S={factorization.S} after {work.operations} row/column updates")
    return factorization


def verify_factorization(A: ExponentMatrix | Sequence[Sequence[int]], F: SmithFactorization) -> bool:
    """Check every Smith factorization invariant against `A` with exact integer arithmetic."""
    entries = A.entries if isinstance(A, ExponentMatrix) else tuple(tuple(row) for row in A)
    n = len(entries)
    if len(F.S) != n or len(F.U) != n or len(F.V) != n:
        return False
    if abs(determinant(F.U)) != 1 or abs(determinant(F.V)) != 1:
        return False
    if matmul(matmul(F.U, entries), F.V) != diagonal(F.S):
        return False
    if any(s < 1 for s in F.S):
        return False
    if any(F.S[i + 1] % F.S[i] for i in range(n - 1)):
        return False
    product = 1
    for s in F.S:
        product *= s
    if product != abs(determinant(entries)):
        return False
    if F.U_inverse is not None and matmul(F.U, F.U_inverse) != identity(n):
        return False
    if F.V_inverse is not None and matmul(F.V, F.V_inverse) != identity(n):
        return False
    return True
