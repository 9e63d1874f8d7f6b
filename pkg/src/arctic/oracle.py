"""Independent brute-force enumerators used to validate every closed form.

Nothing in this module knows about determinants or the closed formulas in
:mod:`arctic.models`; path families are counted by direct depth-first
extension with vertex-disjointness enforced on a shared visited set, and
alternating sign matrices by row-by-row backtracking over column partial sums
(the monotone-triangle characterization: every partial column sum is 0 or 1).
The only shared vocabulary is the geometry of each model (steps, start and
end points), rebuilt here from scratch.

Budgets are explicit: an enumeration that would exceed its state budget
refuses loudly instead of truncating.  The default budget can be overridden
with the ``ARCTIC_ORACLE_BUDGET`` environment variable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .models import ModelId

__all__ = [
    "PathFamilySpec",
    "AsmMatrix",
    "BudgetExceededError",
    "count_nilp",
    "count_nilp_by_exit",
    "enumerate_asm",
    "enumerate_vsasm",
    "osculating_config_check",
    "model_path_spec",
    "model_exit_point",
    "model_exit_range",
    "default_budget",
]

Point = tuple[int, int]
Step = tuple[int, int]

_PROGRESS_CANDIDATES: tuple[Step, ...] = (
    (1, 0), (0, 1), (-1, 0), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1),
)


class BudgetExceededError(RuntimeError):
    def __init__(self, what: str, budget: int):
        super().__init__(f"{what} exceeds the oracle budget of {budget}")
        self.budget = budget


def default_budget() -> int:
    raw = os.environ.get("ARCTIC_ORACLE_BUDGET")
    return int(raw) if raw else 10**8


@dataclass(frozen=True)
class PathFamilySpec:
    """A family of vertex-disjoint directed paths on Z^2.

    ``constraint`` restricts the vertices every path may visit: ``none``,
    ``upper-half`` (y >= 0) or ``first-quadrant`` (x >= 0 and y >= 0).  Path i
    runs from ``starts[i]`` to ``ends[i]``; the distinguished escaping path is
    by convention the last one.
    """

    steps: tuple[Step, ...]
    starts: tuple[Point, ...]
    ends: tuple[Point, ...]
    constraint: str = "none"
    progress: Step = field(init=False)

    def __post_init__(self) -> None:
        if len(self.starts) != len(self.ends):
            raise ValueError(
                f"{len(self.starts)} starts but {len(self.ends)} ends"
            )
        if self.constraint not in ("none", "upper-half", "first-quadrant"):
            raise ValueError(f"unknown constraint {self.constraint!r}")
        for w in _PROGRESS_CANDIDATES:
            if all(w[0] * s[0] + w[1] * s[1] > 0 for s in self.steps):
                object.__setattr__(self, "progress", w)
                return
        raise ValueError(f"steps {self.steps} admit no strict progress direction")

    def allows(self, p: Point) -> bool:
        if self.constraint == "upper-half":
            return p[1] >= 0
        if self.constraint == "first-quadrant":
            return p[0] >= 0 and p[1] >= 0
        return True


def _feasibility(steps: tuple[Step, ...], progress: Step):
    """Memoized test: can some nonnegative combination of steps realize delta?"""

    @lru_cache(maxsize=None)
    def feasible(dx: int, dy: int) -> bool:
        if dx == 0 and dy == 0:
            return True
        if progress[0] * dx + progress[1] * dy <= 0:
            return False
        return any(feasible(dx - sx, dy - sy) for sx, sy in steps)

    return feasible


def count_nilp(spec: PathFamilySpec, budget: int | None = None) -> int:
    """Exact number of vertex-disjoint path families matching the spec.

    All paths advance simultaneously through sweep levels of the progress
    direction; only the frontier (current vertex of every live path, plus
    in-flight markers for steps that advance two levels) is stored, with
    counts aggregated per frontier state.  That turns the exponential
    path-by-path search into a transfer-matrix walk while staying fully
    independent of any determinant machinery.

    ``budget`` caps the total number of (state, move-combination) pairs the
    sweep may examine.
    """
    budget = default_budget() if budget is None else budget
    w = spec.progress
    feasible = _feasibility(spec.steps, spec.progress)
    npaths = len(spec.starts)
    for s, e in zip(spec.starts, spec.ends):
        if not spec.allows(s) or not spec.allows(e):
            return 0
        if not feasible(e[0] - s[0], e[1] - s[1]):
            return 0

    def level(p: Point) -> int:
        return w[0] * p[0] + w[1] * p[1]

    birth = [level(s) for s in spec.starts]
    death = [level(e) for e in spec.ends]
    lo = min(birth) if birth else 0
    hi = max(death) if death else 0
    # Frontier entry per live path: (path index, vertex, in_flight); an
    # in-flight path's vertex is its landing point one level ahead.
    start_state: tuple = ()
    states: dict[tuple, int] = {start_state: 1}
    work = 0

    # Start one level early so paths born at the lowest level are placed
    # inside the uniform birth handling.
    for tau in range(lo - 1, hi):
        nxt_level = tau + 1
        born = [i for i in range(npaths) if birth[i] == nxt_level]
        new_states: dict[tuple, int] = {}
        for state, count in states.items():
            options: list[list[tuple[int, Point, bool]]] = []
            for idx, pos, flight in state:
                if flight:
                    options.append([(idx, pos, False)])
                    continue
                moves = []
                end = spec.ends[idx]
                for sx, sy in spec.steps:
                    nv = (pos[0] + sx, pos[1] + sy)
                    if not spec.allows(nv):
                        continue
                    if not feasible(end[0] - nv[0], end[1] - nv[1]):
                        continue
                    moves.append((idx, nv, level(nv) == tau + 2))
                options.append(moves)
            for j in born:
                options.append([(j, spec.starts[j], False)])

            stack = [(0, [], set())]
            while stack:
                work += 1
                if work > budget:
                    raise BudgetExceededError(f"frontier sweep of {work} states", budget)
                oi, chosen, occupied = stack.pop()
                if oi == len(options):
                    survivors = tuple(
                        entry
                        for entry in sorted(chosen)
                        if not (not entry[2] and death[entry[0]] == nxt_level)
                    )
                    new_states[survivors] = new_states.get(survivors, 0) + count
                    continue
                for entry in options[oi]:
                    _, nv, flight = entry
                    if not flight and nv in occupied:
                        continue
                    nocc = occupied | {nv} if not flight else occupied
                    stack.append((oi + 1, chosen + [entry], nocc))
        states = new_states

    return states.get((), 0)


def count_nilp_by_exit(
    spec: PathFamilySpec, exits: Sequence[Point], budget: int | None = None
) -> dict[Point, int]:
    """Counts with the distinguished (last) endpoint moved to each exit."""
    out: dict[Point, int] = {}
    for exit_point in exits:
        moved = PathFamilySpec(
            steps=spec.steps,
            starts=spec.starts,
            ends=spec.ends[:-1] + (exit_point,),
            constraint=spec.constraint,
        )
        out[exit_point] = count_nilp(moved, budget)
    return out


# ---------------------------------------------------------------------------
# Model geometry
# ---------------------------------------------------------------------------


def model_path_spec(model: ModelId, n: int, k: int | None = None) -> PathFamilySpec:
    """Steps and endpoints of each model, as drawn on the lattice."""
    if model is ModelId.AZTEC:
        return PathFamilySpec(
            steps=((1, 1), (1, -1), (2, 0)),
            starts=tuple((-i, i) for i in range(n + 1)),
            ends=tuple((j, j) for j in range(n + 1)),
        )
    if model is ModelId.DYCK_HALF_HEX:
        if k is None:
            raise ValueError("dyck spec needs k")
        return PathFamilySpec(
            steps=((1, 1), (1, -1)),
            starts=tuple((-2 * i, 0) for i in range(n + 1)),
            ends=tuple((2 * k + 2 * j, 0) for j in range(n + 1)),
            constraint="upper-half",
        )
    if model is ModelId.RED_HALF_HEX:
        if k is None:
            raise ValueError("red spec needs k")
        return PathFamilySpec(
            steps=((0, -2), (1, -1)),
            starts=tuple((i, i + 2 * n + 2) for i in range(k)),
            ends=tuple((2 * j, 0) for j in range(k)),
        )
    if model is ModelId.STAIRCASE:
        return PathFamilySpec(
            steps=((-1, 0), (0, 1)),
            starts=tuple((2 * i, 0) for i in range(n + 1)),
            ends=tuple((0, j) for j in range(n + 1)),
        )
    if model is ModelId.STAIRCASE_ALT:
        # Row i of the counting matrix is the start (2(n-i), 0): the leftmost
        # start must reach the topmost end for the family to be non-crossing.
        return PathFamilySpec(
            steps=((1, 0), (1, 1)),
            starts=tuple((2 * (n - i), 0) for i in range(n + 1)),
            ends=tuple((2 * n, j) for j in range(n + 1)),
        )
    raise ValueError(f"no path-family geometry for model {model}")


def model_exit_point(model: ModelId, n: int, ell: int, k: int | None = None) -> Point:
    """Boundary point where the distinguished path leaves the domain."""
    if model is ModelId.AZTEC:
        return (ell, 2 * n - ell)
    if model is ModelId.DYCK_HALF_HEX:
        return (2 * k + n - ell, n + ell)
    if model is ModelId.RED_HALF_HEX:
        return (2 * k - 2, 2 * ell)
    if model is ModelId.STAIRCASE:
        return (ell, n)
    if model is ModelId.STAIRCASE_ALT:
        return (ell, n)
    raise ValueError(f"no exit geometry for model {model}")


def model_exit_range(model: ModelId, n: int, k: int | None = None) -> range:
    if model is ModelId.AZTEC:
        return range(n + 1)
    if model is ModelId.DYCK_HALF_HEX:
        return range(n + k + 1)
    if model is ModelId.RED_HALF_HEX:
        return range(n + 2)
    if model in (ModelId.STAIRCASE, ModelId.STAIRCASE_ALT):
        return range(2 * n + 1)
    raise ValueError(f"no exit geometry for model {model}")


# ---------------------------------------------------------------------------
# Alternating sign matrices
# ---------------------------------------------------------------------------

ASM_ENUM_MAX = 6
VSASM_ENUM_MAX = 7


@dataclass(frozen=True)
class AsmMatrix:
    """An alternating sign matrix, validated on construction."""

    size: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = self.size
        if len(self.entries) != n or any(len(r) != n for r in self.entries):
            raise ValueError("entry grid does not match size")
        for line in list(self.entries) + [tuple(col) for col in zip(*self.entries)]:
            nonzero = [e for e in line if e != 0]
            if sum(line) != 1:
                raise ValueError(f"line {line} does not sum to 1")
            if any(e not in (-1, 0, 1) for e in line):
                raise ValueError(f"line {line} has entries outside -1, 0, 1")
            if any(a == b for a, b in zip(nonzero, nonzero[1:])):
                raise ValueError(f"non-alternating line {line}")

    def first_column_one_row(self) -> int:
        """1-indexed row of the unique 1 in the first column."""
        for i in range(self.size):
            if self.entries[i][0] == 1:
                return i + 1
        raise AssertionError("valid ASM must have a 1 in its first column")

    def is_vertically_symmetric(self) -> bool:
        n = self.size
        return all(
            self.entries[i][j] == self.entries[i][n - 1 - j]
            for i in range(n)
            for j in range(n)
        )


def _candidate_rows(partial: tuple[int, ...]) -> Iterable[tuple[int, ...]]:
    """All valid next rows given column partial sums, in lexicographic order.

    A row entry may be +1 only over a column with partial sum 0 and -1 only
    over partial sum 1; within the row the nonzero entries must read
    +1, -1, ..., +1.
    """
    n = len(partial)
    row = [0] * n

    def rec(j: int, expect: int, placed_net: int):
        if j == n:
            if placed_net == 1:
                yield tuple(row)
            return
        # Lexicographic order over entry values -1 < 0 < 1.
        if expect == -1 and partial[j] == 1:
            row[j] = -1
            yield from rec(j + 1, 1, placed_net - 1)
            row[j] = 0
        yield from rec(j + 1, expect, placed_net)
        if expect == 1 and partial[j] == 0:
            row[j] = 1
            yield from rec(j + 1, -1, placed_net + 1)
            row[j] = 0

    yield from rec(0, 1, 0)


def enumerate_asm(n: int) -> list[AsmMatrix]:
    """All ASMs of size n, lexicographically ordered by rows."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > ASM_ENUM_MAX:
        raise BudgetExceededError(f"ASM enumeration at n={n}", ASM_ENUM_MAX)
    out: list[AsmMatrix] = []
    rows: list[tuple[int, ...]] = []

    def rec(partial: tuple[int, ...]):
        if len(rows) == n:
            if all(s == 1 for s in partial):
                out.append(AsmMatrix(n, tuple(rows)))
            return
        for row in _candidate_rows(partial):
            rows.append(row)
            rec(tuple(p + r for p, r in zip(partial, row)))
            rows.pop()

    rec(tuple([0] * n))
    return out


def _candidate_half_rows(
    partial: tuple[int, ...], mid_sign: int
) -> Iterable[tuple[int, ...]]:
    """Left halves of symmetric rows compatible with the forced middle entry.

    The full row reads (left, mid, reversed(left)); it alternates iff the left
    part alternates starting with +1 and its last nonzero differs from
    ``mid_sign`` (when the left part is empty, ``mid_sign`` must be +1).  The
    full row sums to 1 iff the left part sums to (1 - mid_sign) / 2.
    """
    n = len(partial)
    need = (1 - mid_sign) // 2
    row = [0] * n

    def rec(j: int, expect: int, net: int, last: int):
        if j == n:
            if net == need and (last == -mid_sign or (last == 0 and mid_sign == 1)):
                yield tuple(row)
            return
        if expect == -1 and partial[j] == 1:
            row[j] = -1
            yield from rec(j + 1, 1, net - 1, -1)
            row[j] = 0
        yield from rec(j + 1, expect, net, last)
        if expect == 1 and partial[j] == 0:
            row[j] = 1
            yield from rec(j + 1, -1, net + 1, 1)
            row[j] = 0

    yield from rec(0, 1, 0, 0)


def enumerate_vsasm(size: int) -> tuple[list[AsmMatrix], list[int]]:
    """All vertically symmetric ASMs of odd size, plus the refined histogram.

    The histogram entry at index ell-1 counts matrices whose unique
    first-column 1 sits in row ell (1-indexed).  Generation backtracks over
    the left half only; the middle column is forced to alternate
    +1, -1, ..., +1 and the right half is the mirror image.
    """
    if size % 2 == 0:
        raise ValueError(f"size must be odd, got {size}")
    if size < 1:
        raise ValueError(f"size must be >= 1, got {size}")
    if size > VSASM_ENUM_MAX:
        raise BudgetExceededError(f"VSASM enumeration at size={size}", VSASM_ENUM_MAX)
    if size == 1:
        m = AsmMatrix(1, ((1,),))
        return [m], [1]
    half = (size - 1) // 2
    out: list[AsmMatrix] = []
    lefts: list[tuple[int, ...]] = []

    def rec(partial: tuple[int, ...]):
        i = len(lefts)
        if i == size:
            if all(s == 1 for s in partial):
                full = tuple(
                    left + ((-1) ** r,) + left[::-1] for r, left in enumerate(lefts)
                )
                out.append(AsmMatrix(size, full))
            return
        for left in _candidate_half_rows(partial, (-1) ** i):
            lefts.append(left)
            rec(tuple(p + r for p, r in zip(partial, left)))
            lefts.pop()

    rec(tuple([0] * half))
    hist = [0] * size
    for m in out:
        hist[m.first_column_one_row() - 1] += 1
    return out, hist


def osculating_config_check(m: AsmMatrix) -> bool:
    """Rebuild the six-vertex path configuration of an ASM and audit it.

    Edge occupancies are the row and column partial sums of the matrix (paths
    enter at the top boundary and leave at the left one); the check verifies
    that every occupancy is 0/1, that the ice rule (path conservation) holds
    at every vertex, that the boundary arrows match the domain-wall pattern,
    and that the vertex type at each cell maps back to the matrix element.
    """
    n = m.size
    a = m.entries
    # h[i][j]: horizontal edge left of cell (i, j); h[i][n] is the right boundary.
    h = [[0] * (n + 1) for _ in range(n)]
    for i in range(n):
        acc = 0
        for j in range(n - 1, -1, -1):
            acc += a[i][j]
            h[i][j] = acc
    # v[i][j]: vertical edge above cell (i, j); v[n][j] is the bottom boundary.
    v = [[0] * n for _ in range(n + 1)]
    for j in range(n):
        acc = 0
        for i in range(n - 1, -1, -1):
            acc += a[i][j]
            v[i][j] = acc

    for i in range(n):
        for j in range(n):
            edges = (v[i][j], h[i][j + 1], v[i + 1][j], h[i][j])
            if any(e not in (0, 1) for e in edges):
                return False
            inbound, outbound = edges[0] + edges[1], edges[2] + edges[3]
            if inbound != outbound:
                return False
            if edges == (1, 0, 0, 1):
                element = 1
            elif edges == (0, 1, 1, 0):
                element = -1
            else:
                element = 0
            if element != a[i][j]:
                return False
    top = all(v[0][j] == 1 for j in range(n))
    bottom = all(v[n][j] == 0 for j in range(n))
    left = all(h[i][0] == 1 for i in range(n))
    right = all(h[i][n] == 0 for i in range(n))
    return top and bottom and left and right
