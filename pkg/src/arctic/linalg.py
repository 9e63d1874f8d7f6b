"""Dense exact-rational matrices, fraction-free determinants and exact LU.

Everything here is exact: entries are ``fractions.Fraction`` and no operation
introduces rounding.  Determinants are deliberately available through two
independent routes (Bareiss elimination and the product of LU pivots) so the
two can be cross-checked; a disagreement is treated as a test failure, never a
warning.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

__all__ = [
    "ExactMatrix",
    "LUPair",
    "SingularMinorError",
    "det_bareiss",
    "leading_principal_minors",
    "lu_exact",
    "unit_lower_inverse",
    "det_ratio_last_column",
    "gf_convolve_truncated",
]

Scalar = Fraction | int


class SingularMinorError(ValueError):
    """A leading principal minor needed by pivot-free LU vanished."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"zero leading principal minor of order {index + 1}")


class ExactMatrix:
    """Immutable dense matrix of exact rationals, 0-indexed, row-major."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Iterable[Scalar]):
        data = tuple(Fraction(e) for e in entries)
        if rows < 1 or cols < 1:
            raise ValueError(f"matrix dimensions must be >= 1, got {rows}x{cols}")
        if len(data) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(data)}")
        self.rows = rows
        self.cols = cols
        self._data = data

    @staticmethod
    def from_rows(rows: Sequence[Sequence[Scalar]]) -> "ExactMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        return ExactMatrix(r, c, [e for row in rows for e in row])

    @staticmethod
    def from_function(rows: int, cols: int, f: Callable[[int, int], Scalar]) -> "ExactMatrix":
        return ExactMatrix(rows, cols, [f(i, j) for i in range(rows) for j in range(cols)])

    @staticmethod
    def identity(n: int) -> "ExactMatrix":
        return ExactMatrix.from_function(n, n, lambda i, j: 1 if i == j else 0)

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) out of range for {self.rows}x{self.cols}")
        return self._data[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self._data[i * self.cols + j] for i in range(self.rows))

    def to_lists(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.from_function(self.cols, self.rows, lambda i, j: self[j, i])

    def truncate(self, size: int) -> "ExactMatrix":
        """Leading size x size corner."""
        if not (1 <= size <= min(self.rows, self.cols)):
            raise ValueError(f"cannot truncate {self.rows}x{self.cols} to {size}")
        return ExactMatrix.from_function(size, size, lambda i, j: self[i, j])

    def with_column(self, j: int, values: Sequence[Scalar]) -> "ExactMatrix":
        if len(values) != self.rows:
            raise ValueError(f"column length {len(values)} != {self.rows}")
        vals = [Fraction(v) for v in values]
        return ExactMatrix.from_function(
            self.rows, self.cols, lambda r, c: vals[r] if c == j else self[r, c]
        )

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum(ri[k] * other[k, j] for k in range(self.cols)))
        return ExactMatrix(self.rows, other.cols, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.rows, self.cols, self._data) == (other.rows, other.cols, other._data)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols})"


@dataclass(frozen=True)
class LUPair:
    """Unit-lower-triangular L and upper-triangular U with L @ U exact."""

    L: ExactMatrix
    U: ExactMatrix

    def reconstruct(self) -> ExactMatrix:
        return self.L @ self.U

    def u_diagonal(self) -> tuple[Fraction, ...]:
        return tuple(self.U[i, i] for i in range(self.U.rows))

    def determinant(self) -> Fraction:
        out = Fraction(1)
        for d in self.u_diagonal():
            out *= d
        return out


def _bareiss_pivots(m: ExactMatrix) -> list[Fraction]:
    """Bareiss elimination; pivot k equals the order-(k+1) leading minor.

    Row swaps (needed only when a leading minor vanishes) flip the sign of all
    subsequent pivots, so the returned minors are exact for the swapped matrix;
    det (the last pivot) is corrected for the swap parity.
    """
    if not m.is_square:
        raise ValueError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    a = m.to_lists()
    sign = 1
    prev = Fraction(1)
    pivots: list[Fraction] = []
    for k in range(n):
        if a[k][k] == 0:
            pivot_row = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if pivot_row is None:
                # Entire lower column zero: determinant is zero.
                pivots.extend([Fraction(0)] * (n - k))
                return pivots
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) / prev
            a[i][k] = Fraction(0)
        prev = pivot
        pivots.append(sign * pivot)
    return pivots


def det_bareiss(m: ExactMatrix) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    return _bareiss_pivots(m)[-1]


def leading_principal_minors(m: ExactMatrix) -> list[Fraction]:
    """Determinants of all leading principal submatrices, in one elimination.

    Only valid when no row swap is needed (all leading minors nonzero), which
    holds for every model matrix in this package; a required swap raises.
    """
    if not m.is_square:
        raise ValueError("minors of non-square matrix")
    n = m.rows
    a = m.to_lists()
    prev = Fraction(1)
    out: list[Fraction] = []
    for k in range(n):
        if a[k][k] == 0:
            raise SingularMinorError(k)
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) / prev
        prev = pivot
        out.append(pivot)
    return out


def lu_exact(m: ExactMatrix) -> LUPair:
    """Unique unit-lower / upper factorization, no pivoting.

    The model matrices are totally-positive-like and never need pivoting; a
    vanishing leading minor is reported with its index, not repaired.
    """
    if not m.is_square:
        raise ValueError(f"LU of non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    u = [[Fraction(0)] * n for _ in range(n)]
    low = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i, n):
            u[i][j] = m[i, j] - sum(low[i][k] * u[k][j] for k in range(i))
        if i < n - 1 and u[i][i] == 0:
            raise SingularMinorError(i)
        for r in range(i + 1, n):
            num = m[r, i] - sum(low[r][k] * u[k][i] for k in range(i))
            low[r][i] = num / u[i][i]
    return LUPair(ExactMatrix.from_rows(low), ExactMatrix.from_rows(u))


def unit_lower_inverse(low: ExactMatrix) -> ExactMatrix:
    """Inverse of a unit lower triangular matrix by forward substitution."""
    n = low.rows
    inv = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i):
            inv[i][j] = -sum(low[i, k] * inv[k][j] for k in range(j, i))
    return ExactMatrix.from_rows(inv)


def det_ratio_last_column(
    l_inv_last_row: Sequence[Scalar],
    b: Sequence[Scalar],
    u_nn: Scalar,
) -> Fraction:
    """One-point function from the last-column replacement trick.

    Returns (sum_k (L^-1)_{n,k} b_k) / U_{n,n}: the ratio det(A~)/det(A) when
    A~ differs from A = L U only in its last column, replaced by b.
    """
    if len(l_inv_last_row) != len(b):
        raise ValueError(f"length mismatch {len(l_inv_last_row)} vs {len(b)}")
    u_nn = Fraction(u_nn)
    if u_nn == 0:
        raise ZeroDivisionError("U_{n,n} is zero")
    acc = sum((Fraction(li) * Fraction(bi) for li, bi in zip(l_inv_last_row, b)), Fraction(0))
    return acc / u_nn


def gf_convolve_truncated(fa: ExactMatrix, fb: ExactMatrix, size: int) -> ExactMatrix:
    """Convolution of two-variable coefficient tables, truncated to size.

    Equals the coefficient table of the product generating function whenever
    one factor is lower triangular and the other upper triangular (then the
    truncation commutes with the product); computed as the exact matrix product
    of the size x size truncations.
    """
    if min(fa.rows, fa.cols, fb.rows, fb.cols) < size:
        raise ValueError(
            f"tables {fa.rows}x{fa.cols} and {fb.rows}x{fb.cols} cannot serve size {size}"
        )
    return fa.truncate(size) @ fb.truncate(size)
