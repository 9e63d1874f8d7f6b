"""Saddle-point scans over exit positions and tangent-line envelopes.

For a model of size n with an escaping path forced to a distant target, the
most likely exit position maximizes H(ell) * Y(ell) over the boundary.  At
finite n this is a straight argmax over the integer exit grid, evaluated in
log arithmetic from the positive closed forms (never from alternating
determinant expansions, whose terms cancel at Stirling scale).  The analytic
saddles are the closed-form large-n limits; the family of lines joining the
saddle exit to the moving target envelopes the limit curve.

Note on the staircase model: its saddle relation is z(xi) = 2(1-xi)^2/(2-xi).
The factor 2 matters; dropping it (an easy slip when eliminating the inner
entropy maximum) yields a family whose envelope misses the parabola by ~5e-2,
while this form lands on it to rounding error and matches the finite-n argmax
and the alternative formulation's saddle xi = 2 - z/2 on overlapping arcs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .models import ModelId, log_escape_profile, log_one_point_profile

__all__ = [
    "SaddleResult",
    "ActionValue",
    "TangentLine",
    "EnvelopeError",
    "finite_n_saddle",
    "analytic_saddle",
    "action_components",
    "admissible_parameter_range",
    "tangent_family",
    "envelope",
    "free_path_midpoint",
    "r_asm",
    "PLATEAU_DEGENERATE_WIDTH",
]

PLATEAU_DEGENERATE_WIDTH = 3


@dataclass(frozen=True)
class SaddleResult:
    z: float
    xi_hat: float
    log_mass: float
    n_used: int
    plateau: int
    degenerate: bool


@dataclass(frozen=True)
class ActionValue:
    """Scaled large-n exponents: escape piece s0, profile piece s1.

    For the red-path model s1 is the primed action of the reformulated
    family; the decomposition is the same either way.
    """

    s0: float
    s1: float

    @property
    def total(self) -> float:
        return self.s0 + self.s1


@dataclass(frozen=True)
class TangentLine:
    """Line through the scaled exit point and the scaled target."""

    z: float
    slope: float
    intercept: float
    exit_point: tuple[float, float]
    target_point: tuple[float, float]

    def __post_init__(self) -> None:
        for px, py in (self.exit_point, self.target_point):
            if abs(py - (self.slope * px + self.intercept)) > 1e-12 * max(1.0, abs(py)):
                raise ValueError(f"line does not pass through ({px}, {py})")

    def y_at(self, x: float) -> float:
        return self.slope * x + self.intercept


class EnvelopeError(ValueError):
    pass


def r_asm(t: float) -> float:
    """Limit slope function of the refined ASM generating series on [0, 1].

    Algebraically (sqrt(t^2 - t + 1) - 1)/(t - 1); evaluated in the
    conjugate form t / (1 + sqrt(t^2 - t + 1)), which is exact at the
    removable t = 1 singularity.
    """
    if not 0 <= t <= 1:
        raise ValueError(f"t={t} outside [0, 1]")
    return t / (1.0 + math.sqrt(t * t - t + 1.0))


def _staircase_xi(z: float) -> float:
    # Positive root of 2 xi^2 + (z-4) xi + 2 - 2z = 0, in (3/2, 2).
    return (4.0 - z + math.sqrt(z * z + 8.0 * z)) / 4.0


def _dyck_cubic(x: float, y: float, xi: float) -> float:
    return (y + xi) * (1 + xi) * (1 + x - xi) - xi * (2 * x + 1 - xi) * (xi - 1)


def _bisect(f: Callable[[float], float], lo: float, hi: float, iters: int = 200) -> float:
    flo = f(lo)
    if flo == 0:
        return lo
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if flo * f(mid) <= 0:
            hi = mid
        else:
            lo = mid
            flo = f(lo)
    return 0.5 * (lo + hi)


def _red_y(x: float, xi: float) -> float:
    return 2 * x * xi * xi / ((1 - xi) * (1 + x + xi))


def analytic_saddle(model: ModelId, z: float, x: float | None = None) -> float:
    """Large-n limit of the most likely exit fraction xi*.

    ``z`` is the scaled target parameter; the half-hexagon models also need
    the scaled width ``x`` and read ``z`` as the scaled target offset y.
    """
    if model is ModelId.AZTEC:
        if z <= 1:
            raise ValueError(f"aztec requires z > 1, got {z}")
        return 1.0 / (2.0 * z)
    if model is ModelId.STAIRCASE:
        if z <= 1:
            raise ValueError(f"staircase requires z > 1, got {z}")
        return _staircase_xi(z)
    if model is ModelId.STAIRCASE_ALT:
        if not 1 < z <= 2:
            raise ValueError(f"staircase-alt requires 1 < z <= 2, got {z}")
        return 2.0 - z / 2.0
    if model is ModelId.DYCK_HALF_HEX:
        if x is None or x <= 0 or z <= 0:
            raise ValueError(f"dyck requires x > 0 and y > 0, got x={x}, y={z}")
        lo = (2 + 3 * x) / (2 + x)
        return _bisect(lambda xi: _dyck_cubic(x, z, xi), lo, 1 + x - 1e-15)
    if model is ModelId.RED_HALF_HEX:
        if x is None or x <= 0 or z <= 0:
            raise ValueError(f"red requires x > 0 and y > 0, got x={x}, y={z}")
        return _bisect(lambda xi: _red_y(x, xi) - z, 1e-15, 1 - 1e-15)
    if model is ModelId.VSASM:
        if z <= 0:
            raise ValueError(f"vsasm requires z > 0, got {z}")
        # xi = r(t) with t = (1 - xi)/(1 - xi + z); strictly increasing in t.
        t = _bisect(lambda tt: r_asm(tt) - 1.0 + tt * z / (1.0 - tt), 1e-15, 1 - 1e-15)
        return r_asm(t)
    raise ValueError(f"unknown model {model}")


def _xlogx(v: float) -> float:
    return 0.0 if v <= 0 else v * math.log(v)


def _entropy(a: float) -> float:
    return -_xlogx(a) - _xlogx(1 - a)


def _binom_exponent(a: float, b: float) -> float:
    """Scaled exponent of C(a n, b n): a log a - b log b - (a-b) log(a-b)."""
    if b < -1e-15 or b > a + 1e-15:
        return -math.inf
    b = min(max(b, 0.0), a)
    return _xlogx(a) - _xlogx(b) - _xlogx(a - b)


def _ternary_max(f: Callable[[float], float], lo: float, hi: float) -> float:
    for _ in range(200):
        m1 = lo + (hi - lo) / 3
        m2 = hi - (hi - lo) / 3
        if f(m1) < f(m2):
            lo = m1
        else:
            hi = m2
    return f(0.5 * (lo + hi))


def action_components(model: ModelId, z: float, xi: float, x: float | None = None) -> ActionValue:
    """Scaled action at exit fraction xi: escape exponent and profile exponent.

    Inner summation variables (the horizontal-step fraction of the diamond
    escape, the saturating index of the half-hexagon profiles) are maximized
    here, exactly as the leading Laplace evaluation prescribes; saturated
    cases land on the boundary of the inner interval automatically.
    """
    if model is ModelId.AZTEC:
        if not 0 <= xi <= 1 or z <= 1:
            raise ValueError(f"need 0 <= xi <= 1 < z, got xi={xi}, z={z}")
        s1 = _entropy(min(xi, 0.5)) - math.log(2)
        disc = (z - xi) ** 2 - 2 * (1 - xi) * (z - 1)
        theta = ((z - xi) - math.sqrt(max(disc, 0.0))) / 2
        s0 = (
            _xlogx(z - xi - theta)
            - _xlogx(theta)
            - _xlogx(1 - xi - theta)
            - _xlogx(z - 1 - theta)
        )
        return ActionValue(s0, s1)
    if model is ModelId.DYCK_HALF_HEX:
        if x is None or not 0 <= xi <= 1 + x:
            raise ValueError(f"need x and 0 <= xi <= 1 + x, got xi={xi}, x={x}")
        lo, hi = max(0.0, (1 - xi) / 2), min(1.0, 1 + x - xi)
        s1 = _ternary_max(
            lambda s: _binom_exponent(1 + xi, 2 - 2 * s) + _binom_exponent(2 + x - s, 1 + xi),
            lo,
            hi,
        ) - _binom_exponent(2 + 2 * x, 1 + xi)
        return ActionValue(_binom_exponent(z + xi, xi), s1)
    if model is ModelId.RED_HALF_HEX:
        if x is None or not 0 <= xi <= 1:
            raise ValueError(f"need x and 0 <= xi <= 1, got xi={xi}, x={x}")
        s1 = _ternary_max(
            lambda s: _binom_exponent(1 + x - s, x) + _binom_exponent(1 + x + s, x),
            xi,
            1.0,
        ) - _binom_exponent(2 + 2 * x, 2.0)
        return ActionValue(_binom_exponent(z + xi, xi), s1)
    if model is ModelId.STAIRCASE:
        if not 0 <= xi <= 2 or z <= 1:
            raise ValueError(f"need 0 <= xi <= 2 and z > 1, got xi={xi}, z={z}")
        s1 = _entropy(min(2 - xi, 0.5)) - math.log(2)
        return ActionValue(_binom_exponent(z - 1 + xi, xi), s1)
    if model is ModelId.STAIRCASE_ALT:
        if not 0 <= xi <= 2 or z <= 1:
            raise ValueError(f"need 0 <= xi <= 2 and z > 1, got xi={xi}, z={z}")
        s1 = -math.inf if xi < 1 else _entropy(min(xi - 1, 0.5)) - math.log(2)
        return ActionValue(_binom_exponent(2 - xi, z - 1), s1)
    if model is ModelId.VSASM:
        if not 0 <= xi <= 1 or z <= 0:
            raise ValueError(f"need 0 <= xi <= 1 and z > 0, got xi={xi}, z={z}")
        s1 = (
            _binom_exponent(1 + xi, 1.0)
            + _binom_exponent(2 - xi, 1.0)
            - _binom_exponent(3.0, 1.0)
        )
        return ActionValue(_binom_exponent(z + 1 - xi, 1 - xi), s1)
    raise ValueError(f"unknown model {model}")


def admissible_parameter_range(model: ModelId) -> tuple[float, float]:
    """Open parameter interval on which the analytic saddle is interior."""
    return {
        ModelId.AZTEC: (1.0, math.inf),
        ModelId.DYCK_HALF_HEX: (0.0, math.inf),
        ModelId.RED_HALF_HEX: (0.0, math.inf),
        ModelId.STAIRCASE: (1.0, math.inf),
        ModelId.STAIRCASE_ALT: (1.0, 2.0),
        ModelId.VSASM: (0.0, math.inf),
    }[model]


def _scan_sizes(model: ModelId, n: int, z: float, x: float | None) -> tuple[int, int, int | None]:
    """(profile size, integer target, secondary k) for a finite-n scan."""
    if model is ModelId.AZTEC:
        return n, max(round(z * n), n + 1), None
    if model is ModelId.DYCK_HALF_HEX:
        if x is None:
            raise ValueError("dyck scan needs x")
        return n, max(round(z * n), 1), round(x * n)
    if model is ModelId.RED_HALF_HEX:
        if x is None:
            raise ValueError("red scan needs x")
        return n, max(round(z * n), 1), round(x * n)
    if model in (ModelId.STAIRCASE, ModelId.STAIRCASE_ALT):
        return n, max(round(z * n), n + 1), None
    if model is ModelId.VSASM:
        size = n if n % 2 == 1 else n + 1
        return size, max(round(z * size), 1), None
    raise ValueError(f"unknown model {model}")


def finite_n_saddle(model: ModelId, n: int, z: float, x: float | None = None) -> SaddleResult:
    """Argmax of log H + log Y over the integer exit grid.

    Ties break toward smaller ell; a plateau wider than
    ``PLATEAU_DEGENERATE_WIDTH`` grid points marks the result degenerate.
    The returned ``xi_hat`` is the exit index scaled by n (by the matrix size
    for the osculating model).
    """
    if n < 64:
        raise ValueError(f"finite-n scan needs n >= 64, got {n}")
    lo, hi = admissible_parameter_range(model)
    if not lo < z < hi + 1e-12:
        raise ValueError(f"z={z} outside admissible range ({lo}, {hi}) for {model.value}")
    size, target, k = _scan_sizes(model, n, z, x)
    log_h = log_one_point_profile(model, size, k)
    log_y = log_escape_profile(model, size, target, k)
    total = log_h + log_y
    if not np.isfinite(total).any():
        raise ValueError(f"empty scan domain for {model.value} at n={n}, z={z}")
    best = int(np.argmax(total))
    top = total[best]
    plateau = int(np.sum(np.abs(total - top) <= 1e-12 * max(1.0, abs(top))))
    ell_start = 1 if model is ModelId.VSASM else 0
    return SaddleResult(
        z=z,
        xi_hat=(best + ell_start) / size,
        log_mass=float(top),
        n_used=size,
        plateau=plateau,
        degenerate=plateau > PLATEAU_DEGENERATE_WIDTH,
    )


# ---------------------------------------------------------------------------
# Tangent families and envelopes
# ---------------------------------------------------------------------------


def _line_through(
    z: float, exit_point: tuple[float, float], target: tuple[float, float]
) -> TangentLine:
    (x0, y0), (x1, y1) = exit_point, target
    if abs(x1 - x0) < 1e-14:
        raise EnvelopeError(f"vertical tangent at parameter {z}")
    slope = (y1 - y0) / (x1 - x0)
    intercept = y0 - slope * x0
    return TangentLine(z, slope, intercept, exit_point, target)


def scaled_geometry(
    model: ModelId, z: float, x: float | None = None
) -> tuple[tuple[float, float], tuple[float, float]]:
    """Scaled (exit point, target point) for parameter z."""
    xi = analytic_saddle(model, z, x)
    if model is ModelId.AZTEC:
        return (xi, 2 - xi), (z, z)
    if model is ModelId.DYCK_HALF_HEX:
        return (2 * x + 1 - xi, 1 + xi), (2 * x + 1 + z, 1 + z)
    if model is ModelId.RED_HALF_HEX:
        return (2 * x, 2 * xi), (2 * x + z, -z)
    if model is ModelId.STAIRCASE:
        return (xi, 1.0), (0.0, z)
    if model is ModelId.STAIRCASE_ALT:
        return (xi, 1.0), (2.0, z)
    if model is ModelId.VSASM:
        return (1.0, xi), (1 + z, 1.0)
    raise ValueError(f"unknown model {model}")


def tangent_family(
    model: ModelId, z_grid: Sequence[float], x: float | None = None
) -> list[TangentLine]:
    """One tangent line per grid parameter, ordered as given."""
    if len(z_grid) < 8:
        raise ValueError(f"tangent family needs >= 8 parameters, got {len(z_grid)}")
    return [_line_through(z, *scaled_geometry(model, z, x)) for z in z_grid]


def envelope(lines: Sequence[TangentLine]) -> tuple[list[tuple[float, float]], list[float]]:
    """Envelope points of a line family, one per interior parameter.

    Solves F = 0 together with a central finite difference of dF/dz across
    the two neighbors; returns the points and the condition number of each
    2x2 system.  Parallel neighbors make the system singular and raise.
    """
    if len(lines) < 3:
        raise ValueError(f"envelope needs >= 3 lines, got {len(lines)}")
    params = [ln.z for ln in lines]
    if any(b <= a for a, b in zip(params, params[1:])):
        raise ValueError("line parameters must be strictly increasing")
    points: list[tuple[float, float]] = []
    conds: list[float] = []
    for i in range(1, len(lines) - 1):
        da = lines[i + 1].slope - lines[i - 1].slope
        db = lines[i + 1].intercept - lines[i - 1].intercept
        # System: y - slope_i x = intercept_i ; 0 x*da = -db
        mat = np.array([[-lines[i].slope, 1.0], [da, 0.0]])
        if abs(da) < 1e-15 * max(1.0, abs(lines[i].slope)):
            raise EnvelopeError(f"parallel neighbors around index {i}")
        x = -db / da
        y = lines[i].y_at(x)
        points.append((x, y))
        conds.append(float(np.linalg.cond(mat)))
    return points, conds


# ---------------------------------------------------------------------------
# Free-path straightness check
# ---------------------------------------------------------------------------


def free_path_midpoint(
    steps: Sequence[tuple[int, int]] | dict[tuple[int, int], int],
    endpoint: tuple[int, int],
    n: int,
) -> tuple[float, float]:
    """Most likely visited point on the mid-progress cut, in scaled units.

    For an unconstrained weighted path ensemble from the origin, splits the
    count at the cut where half of the progress toward ``endpoint`` is spent
    and maximizes log Z(0 -> m) + log Z(m -> endpoint) over cut points m.
    The argmax must approach the straight chord as n grows.
    """
    if n < 64:
        raise ValueError(f"needs n >= 64, got {n}")
    weights = dict(steps) if isinstance(steps, dict) else {s: 1 for s in steps}
    if not weights:
        raise ValueError("empty step set")
    ex, ey = endpoint
    progress = None
    for w in ((1, 0), (0, 1), (1, 1), (-1, 1), (1, -1), (-1, 0), (0, -1)):
        if all(w[0] * sx + w[1] * sy > 0 for sx, sy in weights):
            progress = w
            break
    if progress is None:
        raise ValueError(f"steps {sorted(weights)} admit no progress direction")
    total = progress[0] * ex + progress[1] * ey
    if total <= 0:
        raise ValueError(f"endpoint {endpoint} not ahead of the origin")

    def counts_from(origin: tuple[int, int], top: int) -> dict[tuple[int, int], int]:
        """Weighted path counts from origin to every point within 'top' progress."""
        frontier = {origin: 1}
        by_level: dict[int, dict[tuple[int, int], int]] = {0: dict(frontier)}
        for level in range(1, top + 1):
            nxt: dict[tuple[int, int], int] = {}
            for (sx, sy), wgt in weights.items():
                adv = progress[0] * sx + progress[1] * sy
                src = by_level.get(level - adv)
                if not src:
                    continue
                for (px, py), c in src.items():
                    key = (px + sx, py + sy)
                    nxt[key] = nxt.get(key, 0) + c * wgt
            by_level[level] = nxt
        return by_level

    half = total // 2
    fwd = counts_from((0, 0), half)
    # Backward counts: paths m -> endpoint equal reversed-step paths endpoint -> m.
    rev_weights = {(-sx, -sy): w for (sx, sy), w in weights.items()}
    back_frontier: dict[int, dict[tuple[int, int], int]] = {0: {endpoint: 1}}
    for level in range(1, total - half + 1):
        nxt: dict[tuple[int, int], int] = {}
        for (sx, sy), wgt in rev_weights.items():
            adv = -(progress[0] * sx + progress[1] * sy)
            src = back_frontier.get(level - adv)
            if not src:
                continue
            for (px, py), c in src.items():
                key = (px + sx, py + sy)
                nxt[key] = nxt.get(key, 0) + c * wgt
        back_frontier[level] = nxt

    mid = fwd[half]
    far = back_frontier[total - half]
    best = None
    best_pt = None
    for pt, c in sorted(mid.items()):
        c2 = far.get(pt)
        if not c2:
            continue
        score = math.log(c) + math.log(c2)
        if best is None or score > best + 1e-12:
            best, best_pt = score, pt
    if best_pt is None:
        raise ValueError(f"endpoint {endpoint} unreachable")
    return (best_pt[0] / n, best_pt[1] / n)
