"""The concrete lattice-path models and their exact closed forms.

Five non-interacting path families (large Schroeder paths for the diamond
tiling, Dyck paths and their red-path reformulation for the half-hexagon, and
the two staircase formulations) plus the osculating-path model counted by
vertically symmetric alternating sign matrices.

Each path model packages, in one place:

* the single-path weight ``*_entry`` that fills its counting matrix,
* the closed-form L / U / L^-1 factors where they are known,
* the replacement last column ``*_b_column`` for a path exiting at height
  ``ell``,
* the positive-sum one-point function ``*_one_point``,
* the escape weight counting continuations to the distant target.

Conventions.  Out-of-range binomials vanish (see :mod:`arctic.combinat`), so
every summation below uses the same index-free range as the closed formula it
implements.  One-point functions are normalized by the partition function at
the model's reference exit, hence lie in [0, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Sequence

import numpy as np
from scipy.special import gammaln

from .combinat import ballot, binomial, catalan, trinomial
from .linalg import ExactMatrix

__all__ = [
    "ModelId",
    "AztecParams",
    "DyckParams",
    "StaircaseParams",
    "VsasmParams",
    "OnePointProfile",
    "ClosedLU",
    "ModelOps",
    "MODEL_OPS",
    "aztec_entry",
    "aztec_matrix",
    "aztec_closed_lu",
    "aztec_b_column",
    "aztec_one_point",
    "aztec_escape",
    "dyck_entry",
    "dyck_matrix",
    "dyck_closed_L",
    "dyck_u_diagonal",
    "dyck_partition",
    "dyck_b_column",
    "dyck_one_point",
    "dyck_escape",
    "red_entry",
    "red_matrix",
    "red_closed_L",
    "red_partition",
    "red_b_column",
    "red_one_point",
    "staircase_entry",
    "staircase_alt_entry",
    "staircase_matrix",
    "staircase_alt_matrix",
    "pascal_closed_lu",
    "staircase_b_column",
    "staircase_alt_b_column",
    "staircase_one_point",
    "staircase_alt_one_point",
    "staircase_escape",
    "staircase_alt_escape",
    "n_asm",
    "n_asm_refined",
    "n_vsasm",
    "n_vsasm_refined",
    "vsasm_generating",
    "raz_strog_check",
    "vsasm_escape",
    "one_point_profile",
    "log_one_point_profile",
    "log_escape_profile",
    "EXACT_PROFILE_MAX",
]


class ModelId(Enum):
    AZTEC = "aztec"
    DYCK_HALF_HEX = "dyck"
    RED_HALF_HEX = "red"
    STAIRCASE = "staircase"
    STAIRCASE_ALT = "staircase-alt"
    VSASM = "vsasm"


# ---------------------------------------------------------------------------
# Parameter records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AztecParams:
    """Diamond tiling of order n with target abscissa k > n, exit index ell."""

    n: int
    k: int
    ell: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.k <= self.n:
            raise ValueError(f"k must exceed n, got k={self.k}, n={self.n}")
        if not 0 <= self.ell <= self.n:
            raise ValueError(f"ell={self.ell} outside [0, {self.n}]")

    @property
    def z(self) -> float:
        return self.k / self.n


@dataclass(frozen=True)
class DyckParams:
    """n+1 Dyck paths with horizontal offset k >= 1, target offset p >= 1."""

    n: int
    k: int
    ell: int
    p: int

    def __post_init__(self) -> None:
        if self.n < 0 or self.k < 1 or self.p < 1:
            raise ValueError(f"invalid (n, k, p) = ({self.n}, {self.k}, {self.p})")
        if not 0 <= self.ell <= self.n + self.k:
            raise ValueError(f"ell={self.ell} outside [0, {self.n + self.k}]")

    @property
    def x(self) -> float:
        return self.k / self.n

    @property
    def y(self) -> float:
        return self.p / self.n


@dataclass(frozen=True)
class StaircaseParams:
    """Square-lattice staircase model of order n with sliding endpoint p >= n."""

    n: int
    p: int
    ell: int

    def __post_init__(self) -> None:
        if self.n < 1 or self.p < self.n:
            raise ValueError(f"invalid (n, p) = ({self.n}, {self.p})")
        if not 0 <= self.ell <= 2 * self.n:
            raise ValueError(f"ell={self.ell} outside [0, {2 * self.n}]")

    @property
    def z(self) -> float:
        return self.p / self.n

    @property
    def xi(self) -> float:
        return self.ell / self.n


@dataclass(frozen=True)
class VsasmParams:
    """Odd matrix size 2n+1, first-column 1 in row ell, extension width k."""

    size: int
    ell: int
    k: int

    def __post_init__(self) -> None:
        if self.size < 3 or self.size % 2 == 0:
            raise ValueError(f"size must be odd and >= 3, got {self.size}")
        if not 1 <= self.ell <= self.size:
            raise ValueError(f"ell={self.ell} outside [1, {self.size}]")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")

    @property
    def z(self) -> float:
        return self.k / self.size


@dataclass(frozen=True)
class ClosedLU:
    """Closed-form factors; U or L_inv may be absent for some models."""

    L: ExactMatrix
    U: ExactMatrix | None
    L_inv: ExactMatrix


# ---------------------------------------------------------------------------
# Diamond tiling (large Schroeder paths)
# ---------------------------------------------------------------------------


def aztec_entry(i: int, j: int) -> int:
    """Large Schroeder paths (-i, i) -> (j, j): sum over horizontal counts p."""
    if i < 0 or j < 0:
        raise ValueError(f"indices must be >= 0, got ({i}, {j})")
    return sum(trinomial(i + j - p, p, i - p, j - p) for p in range(min(i, j) + 1))


def aztec_matrix(n: int) -> ExactMatrix:
    return ExactMatrix.from_function(n + 1, n + 1, aztec_entry)


def aztec_closed_lu(n: int) -> ClosedLU:
    """L = C(i,j), U = 2^i C(j,i), L^-1 = (-1)^(i+j) C(i,j)."""
    L = ExactMatrix.from_function(n + 1, n + 1, lambda i, j: binomial(i, j))
    U = ExactMatrix.from_function(n + 1, n + 1, lambda i, j: 2**i * binomial(j, i))
    Linv = ExactMatrix.from_function(n + 1, n + 1, lambda i, j: (-1) ** (i + j) * binomial(i, j))
    return ClosedLU(L, U, Linv)


def aztec_b_column(n: int, ell: int) -> list[int]:
    """Weights of paths (-i, i) -> (ell, 2n - ell); ell = n restores column n."""
    if not 0 <= ell <= n:
        raise ValueError(f"ell={ell} outside [0, {n}]")
    return [aztec_entry(i + ell - n, n) if i + ell - n >= 0 else 0 for i in range(n + 1)]


def aztec_one_point(n: int, ell: int) -> Fraction:
    """H(n, ell) = 2^-n sum_{p<=ell} C(n, p)."""
    if not 0 <= ell <= n:
        raise ValueError(f"ell={ell} outside [0, {n}]")
    return Fraction(sum(comb(n, p) for p in range(ell + 1)), 2**n)


def aztec_escape(ell: int, k: int, n: int) -> int:
    """Continuations from the exit (ell, 2n - ell) to the corner (k, k)."""
    if not 0 <= ell <= n:
        raise ValueError(f"ell={ell} outside [0, {n}]")
    if k <= n:
        raise ValueError(f"target k={k} must exceed n={n}")

    def entry0(i: int, j: int) -> int:
        return aztec_entry(i, j) if i >= 0 and j >= 0 else 0

    return entry0(n - ell, k - n - 1) + entry0(n - ell - 1, k - n - 1)


# ---------------------------------------------------------------------------
# Dyck paths / half-hexagon
# ---------------------------------------------------------------------------


def dyck_entry(i: int, j: int, k: int) -> int:
    """Dyck paths (-2i, 0) -> (2k + 2j, 0): the Catalan number c_{k+i+j}."""
    return catalan(k + i + j)


def dyck_matrix(n: int, k: int) -> ExactMatrix:
    return ExactMatrix.from_function(n + 1, n + 1, lambda i, j: dyck_entry(i, j, k))


def dyck_closed_L(n: int, k: int) -> tuple[ExactMatrix, ExactMatrix]:
    """Closed lower factor of the Catalan-Hankel matrix and its inverse."""

    def lentry(i: int, j: int) -> Fraction:
        if j > i:
            return Fraction(0)
        num = factorial(2 * k + 2 * i) * factorial(k + j) * factorial(k + 2 * j + 1)
        den = factorial(2 * k + 2 * j) * factorial(k + i) * factorial(k + i + j + 1)
        return Fraction(num, den) * comb(i, j)

    def linv_entry(i: int, j: int) -> Fraction:
        if j > i:
            return Fraction(0)
        num = factorial(2 * k + 2 * i) * factorial(k + j) * factorial(k + i + j)
        den = factorial(2 * k + 2 * j) * factorial(k + i) * factorial(k + 2 * i)
        return Fraction((-1) ** (i + j) * num, den) * comb(i, j)

    L = ExactMatrix.from_function(n + 1, n + 1, lentry)
    Linv = ExactMatrix.from_function(n + 1, n + 1, linv_entry)
    return L, Linv


def dyck_u_diagonal(n: int, k: int) -> list[Fraction]:
    """U_{i,i} = (2i+1)! (2k+2i)! / ((k+2i+1)! (k+2i)!)."""
    return [
        Fraction(
            factorial(2 * i + 1) * factorial(2 * k + 2 * i),
            factorial(k + 2 * i + 1) * factorial(k + 2 * i),
        )
        for i in range(n + 1)
    ]


def dyck_partition(n: int, k: int) -> int:
    prod = Fraction(1)
    for d in dyck_u_diagonal(n, k):
        prod *= d
    if prod.denominator != 1:
        raise AssertionError(f"dyck partition product not integral: {prod}")
    return prod.numerator


def dyck_b_column(n: int, k: int, ell: int) -> list[int]:
    """Weights of Dyck paths (-2i, 0) -> (2k + n - ell, n + ell)."""
    if not 0 <= ell <= n + k:
        raise ValueError(f"ell={ell} outside [0, {n + k}]")
    return [ballot(2 * k + 2 * i + n - ell, n + ell) for i in range(n + 1)]


def dyck_one_point(n: int, k: int, ell: int) -> Fraction:
    """Positive-sum one-point function; identically 1 for ell <= n."""
    if not 0 <= ell <= n + k:
        raise ValueError(f"ell={ell} outside [0, {n + k}]")
    total = sum(
        binomial(n + ell + 1, 2 * n + 1 - 2 * s) * binomial(2 * n + k - s, n + ell)
        for s in range(n + 1)
    )
    return Fraction(total, comb(2 * n + 2 * k, n + ell))


def dyck_escape(p: int, ell: int) -> int:
    """Single monotone path continuations: C(p + ell - 1, ell)."""
    if p < 1 or ell < 0:
        raise ValueError(f"requires p >= 1 and ell >= 0, got ({p}, {ell})")
    return comb(p + ell - 1, ell)


# ---------------------------------------------------------------------------
# Red-path reformulation of the half-hexagon
# ---------------------------------------------------------------------------


def red_entry(i: int, j: int, n: int) -> int:
    """Paths (i, i + 2n + 2) -> (2j, 0) with steps (0,-2) and (1,-1)."""
    return binomial(j + n + 1, 2 * j - i)


def red_matrix(n: int, k: int) -> ExactMatrix:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return ExactMatrix.from_function(k, k, lambda i, j: red_entry(i, j, n))


def red_closed_L(n: int, k: int) -> tuple[ExactMatrix, ExactMatrix]:
    """Banded lower factor of the red-path matrix and its inverse."""

    def lentry(i: int, j: int) -> Fraction:
        if j > i or 2 * j < i:
            return Fraction(0)
        num = factorial(i) * factorial(j + 2 * n + 2)
        den = factorial(i - j) * factorial(2 * j - i) * factorial(i + 2 * n + 2)
        return Fraction(num, den)

    def linv_entry(i: int, j: int) -> Fraction:
        if j > i:
            return Fraction(0)
        if i == j:
            return Fraction(1)
        if j == 0:
            return Fraction(0)
        num = factorial(j + 2 * n + 2) * factorial(2 * i - j - 1)
        den = factorial(i + 2 * n + 2) * factorial(i - j) * factorial(j - 1)
        return Fraction((-1) ** (i + j) * num, den)

    L = ExactMatrix.from_function(k, k, lentry)
    Linv = ExactMatrix.from_function(k, k, linv_entry)
    return L, Linv


def red_u_diagonal(n: int, k: int) -> list[Fraction]:
    return [
        Fraction(
            factorial(2 * n + 2 + 2 * i) * factorial(i),
            factorial(2 * n + 2 + i) * factorial(2 * i),
        )
        for i in range(k)
    ]


def red_partition(n: int, k: int) -> int:
    if n < 0 or k < 1:
        raise ValueError(f"requires n >= 0 and k >= 1, got ({n}, {k})")
    prod = Fraction(1)
    for d in red_u_diagonal(n, k):
        prod *= d
    if prod.denominator != 1:
        raise AssertionError(f"red partition product not integral: {prod}")
    return prod.numerator


def red_b_column(n: int, k: int, ell: int) -> list[int]:
    """Weights of red paths (i, i + 2n + 2) -> (2k - 2, 2 ell)."""
    if not 0 <= ell <= n + 1:
        raise ValueError(f"ell={ell} outside [0, {n + 1}]")
    return [binomial(n + k - ell, 2 * k - 2 - i) for i in range(k)]


def red_one_point(n: int, k: int, ell: int) -> Fraction:
    """H_2(n, k; ell) as a positive sum over the saturated index s.

    The summand is C(k+n-1-s, k-2) C(k+n+s, k-2): the form consistent with the
    contour derivation and with det ratios (the journal display shifts both
    arguments by one, which already fails the normalization H_2(n, k; 0) = 1
    for k >= 3).  Requires k >= 2; for k = 1 the matrix is 1x1 and H_2 == 1.
    """
    if k < 2:
        raise ValueError(f"one-point sum requires k >= 2, got k={k}")
    if not 0 <= ell <= n + 1:
        raise ValueError(f"ell={ell} outside [0, {n + 1}]")
    total = sum(
        binomial(k + n - 1 - s, k - 2) * binomial(k + n + s, k - 2)
        for s in range(ell, n + 2)
    )
    return Fraction(2 * total, comb(2 * n + 2 * k, 2 * n + 3))


# ---------------------------------------------------------------------------
# Staircase model, both formulations
# ---------------------------------------------------------------------------


def staircase_entry(i: int, j: int) -> int:
    """Left/up paths (2i, 0) -> (0, j): C(2i + j, j)."""
    if i < 0 or j < 0:
        raise ValueError(f"indices must be >= 0, got ({i}, {j})")
    return comb(2 * i + j, j)


def staircase_alt_entry(i: int, j: int) -> int:
    """East/north-east paths (2i, 0) -> (2n, j): C(2i, j)."""
    if i < 0 or j < 0:
        raise ValueError(f"indices must be >= 0, got ({i}, {j})")
    return binomial(2 * i, j)


def staircase_matrix(n: int) -> ExactMatrix:
    return ExactMatrix.from_function(n + 1, n + 1, staircase_entry)


def staircase_alt_matrix(n: int) -> ExactMatrix:
    return ExactMatrix.from_function(n + 1, n + 1, staircase_alt_entry)


def pascal_closed_lu(n: int) -> ClosedLU:
    """L = C(i,j) with U unavailable in closed form off the diagonal."""
    L = ExactMatrix.from_function(n + 1, n + 1, lambda i, j: binomial(i, j))
    Linv = ExactMatrix.from_function(n + 1, n + 1, lambda i, j: (-1) ** (i + j) * binomial(i, j))
    return ClosedLU(L, None, Linv)


def staircase_b_column(n: int, ell: int) -> list[int]:
    if not 0 <= ell <= 2 * n:
        raise ValueError(f"ell={ell} outside [0, {2 * n}]")
    return [binomial(n + 2 * i - ell, n) for i in range(n + 1)]


def staircase_alt_b_column(n: int, ell: int) -> list[int]:
    if not 0 <= ell <= 2 * n:
        raise ValueError(f"ell={ell} outside [0, {2 * n}]")
    return [binomial(ell + 2 * i - 2 * n, n) for i in range(n + 1)]


def staircase_one_point(n: int, ell: int) -> Fraction:
    """H(n; ell) = 2^-n sum_{j <= min(n, 2n-ell)} C(n, j)."""
    if not 0 <= ell <= 2 * n:
        raise ValueError(f"ell={ell} outside [0, {2 * n}]")
    m = min(n, 2 * n - ell)
    return Fraction(sum(comb(n, j) for j in range(m + 1)), 2**n)


def staircase_alt_one_point(n: int, ell: int) -> Fraction:
    """H_2(n; ell) = 2^-n sum_{j <= ell-n} C(n, j); zero for ell < n."""
    if not 0 <= ell <= 2 * n:
        raise ValueError(f"ell={ell} outside [0, {2 * n}]")
    m = min(ell - n, n)
    return Fraction(sum(comb(n, j) for j in range(m + 1)), 2**n)


def staircase_escape(n: int, p: int, ell: int) -> int:
    """Single path (ell, n) -> (0, p) whose first step is up."""
    if p < n:
        raise ValueError(f"requires p >= n, got p={p}, n={n}")
    return binomial(p - n - 1 + ell, ell)


def staircase_alt_escape(n: int, p: int, ell: int) -> int:
    """Single path (ell, n) -> (2n, p) whose first step is diagonal."""
    if p < n:
        raise ValueError(f"requires p >= n, got p={p}, n={n}")
    return binomial(2 * n - ell - 1, p - n - 1)


# ---------------------------------------------------------------------------
# Alternating sign matrix counting
# ---------------------------------------------------------------------------


def n_asm(n: int) -> int:
    """Number of alternating sign matrices of size n."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    out = Fraction(1)
    for i in range(n):
        out *= Fraction(factorial(3 * i + 1), factorial(n + i))
    assert out.denominator == 1
    return out.numerator


def n_asm_refined(n: int, ell: int) -> int:
    """ASMs of size n whose unique first-row 1 sits in column ell."""
    if not 1 <= ell <= n:
        raise ValueError(f"ell={ell} outside [1, {n}]")
    ratio = Fraction(comb(n + ell - 2, n - 1) * comb(2 * n - 1 - ell, n - 1), comb(3 * n - 2, n - 1))
    out = ratio * n_asm(n)
    assert out.denominator == 1
    return out.numerator


def n_vsasm(size: int) -> int:
    """Number of vertically symmetric ASMs of odd size 2n + 1."""
    if size < 1 or size % 2 == 0:
        raise ValueError(f"size must be odd and >= 1, got {size}")
    n = (size - 1) // 2
    out = Fraction(1, 2**n)
    for i in range(1, n + 1):
        out *= Fraction(
            factorial(6 * i - 2) * factorial(2 * i - 1),
            factorial(4 * i - 1) * factorial(4 * i - 2),
        )
    assert out.denominator == 1
    return out.numerator


def n_vsasm_refined(size: int, ell: int) -> int:
    """VSASMs of size 2n+1 with the unique first-column 1 in row ell.

    Alternating sum; usable only at exact small sizes, which is precisely why
    the tangent scan works with the positive ASM ratio instead.
    """
    if size < 3 or size % 2 == 0:
        raise ValueError(f"size must be odd and >= 3, got {size}")
    if not 1 <= ell <= size:
        raise ValueError(f"ell={ell} outside [1, {size}]")
    n = (size - 1) // 2
    acc = 0
    for i in range(1, ell):
        term = Fraction(
            factorial(2 * n + i - 2) * factorial(4 * n - i - 1),
            factorial(i - 1) * factorial(2 * n - i),
        )
        acc += (-1) ** (ell + i - 1) * term
    out = Fraction(n_vsasm(2 * n - 1), factorial(4 * n - 2)) * acc
    assert out.denominator == 1, f"refined count not integral: {out}"
    return out.numerator


def vsasm_generating(size: int, t: Fraction | int) -> Fraction:
    """h(t) = sum_ell refined(ell)/total * t^(ell-1), evaluated exactly."""
    if size < 3 or size % 2 == 0:
        raise ValueError(f"size must be odd and >= 3, got {size}")
    t = Fraction(t)
    total = n_vsasm(size)
    acc = Fraction(0)
    for ell in range(1, size + 1):
        acc += Fraction(n_vsasm_refined(size, ell), total) * t ** (ell - 1)
    return acc


def raz_strog_check(size: int, t: Fraction | int) -> bool:
    """Exact identity tying refined VSASM counts to refined ASM counts.

    lhs: sum_ell N_VSASM(2n+1, ell) t^(ell-1) / N_VSASM(2n-1)
    rhs: t/(t+1) * sum_ell N_ASM(2n, ell) t^(ell-1) / N_ASM(2n-1)
    """
    if size < 3 or size % 2 == 0:
        raise ValueError(f"size must be odd and >= 3, got {size}")
    t = Fraction(t)
    if t == -1:
        raise ValueError("t = -1 is outside the identity's domain")
    n = (size - 1) // 2
    lhs = sum(
        (n_vsasm_refined(size, ell) * t ** (ell - 1) for ell in range(1, 2 * n + 1)),
        Fraction(0),
    ) / n_vsasm(2 * n - 1)
    rhs = (
        t
        / (t + 1)
        * sum((n_asm_refined(2 * n, ell) * t ** (ell - 1) for ell in range(1, 2 * n + 1)), Fraction(0))
        / n_asm(2 * n - 1)
    )
    return lhs == rhs


def vsasm_escape(ell: int, k: int, size: int) -> int:
    """Single six-vertex path continuations, summed over north-east corners."""
    if not 1 <= ell <= size:
        raise ValueError(f"ell={ell} outside [1, {size}]")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return sum(
        binomial(k - 1, p) * binomial(size - ell, p)
        for p in range(min(k - 1, size - ell) + 1)
    )


# ---------------------------------------------------------------------------
# One-point profiles (exact and log-space)
# ---------------------------------------------------------------------------

EXACT_PROFILE_MAX = 512


@dataclass(frozen=True)
class OnePointProfile:
    """Exact one-point values indexed by exit position."""

    model: ModelId
    n: int
    k: int | None
    ell_start: int
    values: tuple[Fraction, ...]

    def __getitem__(self, ell: int) -> Fraction:
        return self.values[ell - self.ell_start]

    @property
    def ells(self) -> range:
        return range(self.ell_start, self.ell_start + len(self.values))


@dataclass(frozen=True)
class ModelOps:
    """Uniform handle on one Gessel-Viennot model for tests and the CLI.

    ``k`` is the secondary size parameter; models without one ignore it.
    """

    model: ModelId
    needs_k: bool
    matrix: Callable[[int, int | None], ExactMatrix]
    b_column: Callable[[int, int | None, int], list[int]]
    one_point: Callable[[int, int | None, int], Fraction]
    partition: Callable[[int, int | None], int]
    ell_max: Callable[[int, int | None], int]
    reference_ell: Callable[[int, int | None], int]
    closed_l_inv: Callable[[int, int | None], ExactMatrix]


MODEL_OPS: dict[ModelId, ModelOps] = {
    ModelId.AZTEC: ModelOps(
        model=ModelId.AZTEC,
        needs_k=False,
        matrix=lambda n, k: aztec_matrix(n),
        b_column=lambda n, k, ell: aztec_b_column(n, ell),
        one_point=lambda n, k, ell: aztec_one_point(n, ell),
        partition=lambda n, k: 2 ** (n * (n + 1) // 2),
        ell_max=lambda n, k: n,
        reference_ell=lambda n, k: n,
        closed_l_inv=lambda n, k: aztec_closed_lu(n).L_inv,
    ),
    ModelId.DYCK_HALF_HEX: ModelOps(
        model=ModelId.DYCK_HALF_HEX,
        needs_k=True,
        matrix=lambda n, k: dyck_matrix(n, k),
        b_column=lambda n, k, ell: dyck_b_column(n, k, ell),
        one_point=lambda n, k, ell: dyck_one_point(n, k, ell),
        partition=lambda n, k: dyck_partition(n, k),
        ell_max=lambda n, k: n + k,
        reference_ell=lambda n, k: 0,
        closed_l_inv=lambda n, k: dyck_closed_L(n, k)[1],
    ),
    ModelId.RED_HALF_HEX: ModelOps(
        model=ModelId.RED_HALF_HEX,
        needs_k=True,
        matrix=lambda n, k: red_matrix(n, k),
        b_column=lambda n, k, ell: red_b_column(n, k, ell),
        one_point=lambda n, k, ell: red_one_point(n, k, ell),
        partition=lambda n, k: red_partition(n, k),
        ell_max=lambda n, k: n + 1,
        reference_ell=lambda n, k: 0,
        closed_l_inv=lambda n, k: red_closed_L(n, k)[1],
    ),
    ModelId.STAIRCASE: ModelOps(
        model=ModelId.STAIRCASE,
        needs_k=False,
        matrix=lambda n, k: staircase_matrix(n),
        b_column=lambda n, k, ell: staircase_b_column(n, ell),
        one_point=lambda n, k, ell: staircase_one_point(n, ell),
        partition=lambda n, k: 2 ** (n * (n + 1) // 2),
        ell_max=lambda n, k: 2 * n,
        reference_ell=lambda n, k: 0,
        closed_l_inv=lambda n, k: pascal_closed_lu(n).L_inv,
    ),
    ModelId.STAIRCASE_ALT: ModelOps(
        model=ModelId.STAIRCASE_ALT,
        needs_k=False,
        matrix=lambda n, k: staircase_alt_matrix(n),
        b_column=lambda n, k, ell: staircase_alt_b_column(n, ell),
        one_point=lambda n, k, ell: staircase_alt_one_point(n, ell),
        partition=lambda n, k: 2 ** (n * (n + 1) // 2),
        ell_max=lambda n, k: 2 * n,
        reference_ell=lambda n, k: 2 * n,
        closed_l_inv=lambda n, k: pascal_closed_lu(n).L_inv,
    ),
}


def one_point_profile(
    model: ModelId, n: int, k: int | None = None, exact_max: int = EXACT_PROFILE_MAX
) -> OnePointProfile:
    """Exact profile of H over the full exit range.

    Sizes above ``exact_max`` are refused; use :func:`log_one_point_profile`
    there (the crossover exists because exact partial sums at Stirling scale
    are pointless work).
    """
    if n > exact_max:
        raise ValueError(f"n={n} exceeds exact profile crossover {exact_max}")
    if model is ModelId.VSASM:
        size = n
        total = n_vsasm(size)
        vals = tuple(Fraction(n_vsasm_refined(size, ell), total) for ell in range(1, size + 1))
        return OnePointProfile(model, size, None, 1, vals)
    ops = MODEL_OPS[model]
    if ops.needs_k and k is None:
        raise ValueError(f"model {model.value} needs the k parameter")
    vals = tuple(ops.one_point(n, k, ell) for ell in range(ops.ell_max(n, k) + 1))
    return OnePointProfile(model, n, k if ops.needs_k else None, 0, vals)


def _log_comb(n: np.ndarray, k: np.ndarray) -> np.ndarray:
    """Vectorized log C(n, k) with -inf outside 0 <= k <= n."""
    n = np.asarray(n, dtype=float)
    k = np.asarray(k, dtype=float)
    valid = (k >= 0) & (k <= n)
    n_safe = np.where(valid, n, 1.0)
    k_safe = np.where(valid, k, 0.0)
    out = gammaln(n_safe + 1) - gammaln(k_safe + 1) - gammaln(n_safe - k_safe + 1)
    return np.where(valid, out, -np.inf)


def _cumulative_logsumexp(v: np.ndarray) -> np.ndarray:
    out = np.empty_like(v)
    acc = -np.inf
    for i, x in enumerate(v):
        if x == -np.inf:
            out[i] = acc
            continue
        if acc == -np.inf:
            acc = x
        else:
            hi, lo = (acc, x) if acc >= x else (x, acc)
            acc = hi + math.log1p(math.exp(lo - hi))
        out[i] = acc
    return out


def _logsumexp_rows(m: np.ndarray) -> np.ndarray:
    """logsumexp along axis 1, tolerating all -inf rows."""
    mx = np.max(m, axis=1)
    safe = np.where(np.isfinite(mx), mx, 0.0)
    s = np.sum(np.exp(m - safe[:, None]), axis=1, where=np.isfinite(m), out=np.zeros(len(m)))
    with np.errstate(divide="ignore"):
        return np.where(np.isfinite(mx), safe + np.log(s), -np.inf)


def log_one_point_profile(model: ModelId, n: int, k: int | None = None) -> np.ndarray:
    """log H over the exit range, from the positive closed forms only.

    For the osculating model this is the plain ASM ratio, whose difference
    from the symmetric-class profile vanishes in the scaling limit; the
    alternating refined formula is never evaluated at large size.

    Profiles are target-independent, so results are cached (read-only arrays)
    for reuse across a scan's whole parameter grid.
    """
    cached = _profile_cache.get((model, n, k))
    if cached is not None:
        return cached
    out = _log_one_point_profile_impl(model, n, k)
    out.setflags(write=False)
    _profile_cache[(model, n, k)] = out
    return out


_profile_cache: dict[tuple[ModelId, int, int | None], np.ndarray] = {}


def _log_one_point_profile_impl(model: ModelId, n: int, k: int | None) -> np.ndarray:
    if model is ModelId.AZTEC:
        p = np.arange(n + 1)
        return _cumulative_logsumexp(_log_comb(np.full(n + 1, n), p)) - n * math.log(2)
    if model is ModelId.STAIRCASE:
        p = np.arange(n + 1)
        csum = _cumulative_logsumexp(_log_comb(np.full(n + 1, n), p))
        ell = np.arange(2 * n + 1)
        return csum[np.minimum(n, 2 * n - ell)] - n * math.log(2)
    if model is ModelId.STAIRCASE_ALT:
        p = np.arange(n + 1)
        csum = _cumulative_logsumexp(_log_comb(np.full(n + 1, n), p))
        ell = np.arange(2 * n + 1)
        m = ell - n
        out = np.where(m >= 0, csum[np.clip(m, 0, n)], -np.inf)
        return out - n * math.log(2)
    if model is ModelId.DYCK_HALF_HEX:
        if k is None:
            raise ValueError("dyck profile needs k")
        ells = np.arange(n + k + 1)
        s = np.arange(n + 1)
        out = np.empty(n + k + 1)
        norm = _log_comb(np.full(n + k + 1, 2 * n + 2 * k), n + ells)
        for lo in range(0, n + k + 1, 512):
            hi = min(lo + 512, n + k + 1)
            blk = ells[lo:hi][:, None]
            terms = _log_comb(blk + n + 1, 2 * n + 1 - 2 * s[None, :]) + _log_comb(
                2 * n + k - s[None, :], blk + n
            )
            out[lo:hi] = _logsumexp_rows(terms)
        return out - norm
    if model is ModelId.RED_HALF_HEX:
        if k is None:
            raise ValueError("red profile needs k")
        s = np.arange(n + 2)
        terms = _log_comb(np.full(n + 2, k + n - 1) - s, np.full(n + 2, k - 2)) + _log_comb(
            np.full(n + 2, k + n) + s, np.full(n + 2, k - 2)
        )
        suffix = _cumulative_logsumexp(terms[::-1])[::-1]
        norm = float(_log_comb(np.array(2 * n + 2 * k), np.array(2 * n + 3)))
        return suffix + math.log(2) - norm
    if model is ModelId.VSASM:
        size = n
        ell = np.arange(1, size + 1)
        return (
            _log_comb(size + ell - 2, np.full(size, size - 1))
            + _log_comb(2 * size - 1 - ell, np.full(size, size - 1))
            - float(_log_comb(np.array(3 * size - 2), np.array(size - 1)))
        )
    raise ValueError(f"unknown model {model}")


def _log_schroeder_column(m_max: int, j: int) -> np.ndarray:
    """log of the path weights A(m, j) for m = 0..m_max, by row logsumexp."""
    if j < 0:
        return np.full(m_max + 1, -np.inf)
    m = np.arange(m_max + 1)
    out = np.empty(m_max + 1)
    p_max = min(m_max, j)
    p = np.arange(p_max + 1)
    for lo in range(0, m_max + 1, 512):
        hi = min(lo + 512, m_max + 1)
        mm = m[lo:hi][:, None]
        pp = p[None, :]
        valid = (pp <= mm) & (pp <= j)
        terms = np.where(
            valid,
            gammaln(np.maximum(mm + j - pp, 0) + 1)
            - gammaln(pp + 1)
            - gammaln(np.maximum(mm - pp, 0) + 1)
            - gammaln(np.maximum(j - pp, 0) + 1),
            -np.inf,
        )
        out[lo:hi] = _logsumexp_rows(terms)
    return out


def log_escape_profile(model: ModelId, n: int, target: int, k: int | None = None) -> np.ndarray:
    """log of the escape weight Y over the same exit range as the profile.

    ``target`` is the model's distant-endpoint parameter: the corner abscissa
    for the diamond, the sliding offset p for the half-hexagon and staircase
    models, and the extension width for the osculating model.
    """
    if model is ModelId.AZTEC:
        if target <= n:
            raise ValueError(f"target k={target} must exceed n={n}")
        col = _log_schroeder_column(n, target - n - 1)
        ell = np.arange(n + 1)
        a = col[n - ell]
        b = np.where(n - ell - 1 >= 0, col[np.clip(n - ell - 1, 0, n)], -np.inf)
        hi = np.maximum(a, b)
        lo = np.minimum(a, b)
        return np.where(np.isfinite(lo), hi + np.log1p(np.exp(lo - hi)), hi)
    if model is ModelId.DYCK_HALF_HEX:
        if k is None:
            raise ValueError("dyck escape needs k")
        ell = np.arange(n + k + 1)
        return _log_comb(target + ell - 1, ell)
    if model is ModelId.RED_HALF_HEX:
        ell = np.arange(n + 2)
        return _log_comb(target + ell - 1, ell)
    if model is ModelId.STAIRCASE:
        ell = np.arange(2 * n + 1)
        return _log_comb(target - n - 1 + ell, ell)
    if model is ModelId.STAIRCASE_ALT:
        ell = np.arange(2 * n + 1)
        return _log_comb(2 * n - ell - 1, np.full(2 * n + 1, target - n - 1))
    if model is ModelId.VSASM:
        size = n
        ell = np.arange(1, size + 1)
        return _log_comb(target - 1 + size - ell, size - ell)
    raise ValueError(f"unknown model {model}")
