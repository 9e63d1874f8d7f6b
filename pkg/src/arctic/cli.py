"""Command-line front end: verification suites, pipelines, and artifacts.

Every command writes a machine-readable JSON report with one entry per check
(name, expected, actual, tolerance, pass) and exits 0 only if all checks
pass; invalid invocations exit 2.  Exact rationals are serialized as
"num/den" strings, never floats, and all artifacts (JSON, CSV, SVG) are
byte-identical across runs for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import math
import subprocess
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .curves import ImplicitCurve, curve_catalog, parametric_catalog, residual
from .linalg import ExactMatrix, det_bareiss, det_ratio_last_column, lu_exact
from .models import (
    MODEL_OPS,
    ModelId,
    n_asm,
    n_vsasm,
    n_vsasm_refined,
    one_point_profile,
    raz_strog_check,
)
from .oracle import (
    count_nilp,
    count_nilp_by_exit,
    enumerate_asm,
    enumerate_vsasm,
    model_exit_point,
    model_exit_range,
    model_path_spec,
)
from .tangent import TangentLine, analytic_saddle, envelope, finite_n_saddle, tangent_family

USAGE_ERROR = 2


def fraction_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def describe_version() -> str:
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty", "--tags"],
            capture_output=True,
            text=True,
            timeout=10,
        )
        if out.returncode == 0:
            return out.stdout.strip()
    except (OSError, subprocess.SubprocessError):
        pass
    return __version__


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters shared by the pipeline commands."""

    command: str
    model: str
    tolerance: float | None = None
    grid_count: int | None = None

    def __post_init__(self) -> None:
        if self.tolerance is not None and not self.tolerance > 0:
            raise ValueError(f"tolerance must be > 0, got {self.tolerance}")
        if self.command == "envelope" and (self.grid_count is None or self.grid_count < 8):
            raise ValueError(f"envelope runs need a grid of at least 8 points, got {self.grid_count}")


def _run_config(args, parser, **kwargs) -> RunConfig:
    try:
        return RunConfig(command=args.command, model=args.model, **kwargs)
    except ValueError as exc:
        parser.error(str(exc))


@dataclass
class Check:
    name: str
    expected: Any
    actual: Any
    tolerance: Any = "exact"

    @property
    def passed(self) -> bool:
        if self.tolerance == "exact":
            return self.expected == self.actual
        return abs(float(self.expected) - float(self.actual)) <= float(self.tolerance)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "expected": self.expected,
            "actual": self.actual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


@dataclass
class Report:
    command: str
    model: str
    params: dict
    checks: list[Check] = field(default_factory=list)
    artifacts: list[str] = field(default_factory=list)

    def add(self, name: str, expected: Any, actual: Any, tolerance: Any = "exact") -> None:
        self.checks.append(Check(name, expected, actual, tolerance))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "model": self.model,
            "params": self.params,
            "version": describe_version(),
            "checks": [c.as_dict() for c in self.checks],
            "artifacts": self.artifacts,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _model_from_name(name: str) -> ModelId:
    for m in ModelId:
        if m.value == name:
            return m
    raise SystemExit(USAGE_ERROR)


def _write(path: Path, content: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(content, encoding="utf-8")


# ---------------------------------------------------------------------------
# SVG rendering
# ---------------------------------------------------------------------------

_VIEW = 1000.0


def _implicit_branches(curve: ImplicitCurve, samples: int = 256) -> list[list[tuple[float, float]]]:
    """Sample the (degree <= 2 in y) curve over its window, one or two branches."""
    coeff = dict(curve.coefficients)
    (x0, x1), (y0, y1) = curve.window
    branches: list[list[tuple[float, float]]] = [[], []]
    for i in range(samples + 1):
        x = x0 + (x1 - x0) * i / samples
        a = coeff.get((0, 2), 0.0)
        b = coeff.get((0, 1), 0.0) + coeff.get((1, 1), 0.0) * x
        c = sum(cv * x**ix for (ix, iy), cv in coeff.items() if iy == 0)
        if a == 0:
            ys = [-c / b] if b else []
        else:
            disc = b * b - 4 * a * c
            if disc < 0:
                continue
            r = math.sqrt(disc)
            ys = [(-b - r) / (2 * a), (-b + r) / (2 * a)]
        for branch, y in zip(branches, sorted(ys)):
            if y0 - 1e-9 <= y <= y1 + 1e-9:
                branch.append((x, y))
    return [b for b in branches if len(b) >= 2]


def emit_svg(
    lines: Sequence[TangentLine],
    env_points: Sequence[tuple[float, float]],
    curve: ImplicitCurve | None,
    frame: tuple[float, float, float, float] | None = None,
) -> str:
    """Deterministic SVG 1.1 figure of tangents, envelope, and closed curve."""
    if not lines and not env_points and curve is None:
        raise ValueError("nothing to draw")
    xs: list[float] = [p[0] for p in env_points]
    ys: list[float] = [p[1] for p in env_points]
    if curve is not None:
        (cx0, cx1), (cy0, cy1) = curve.window
        xs += [cx0, cx1]
        ys += [cy0, cy1]
    for ln in lines:
        xs += [ln.exit_point[0], ln.target_point[0]]
        ys += [ln.exit_point[1], ln.target_point[1]]
    if frame is None:
        pad = 0.05 * max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
        frame = (min(xs) - pad, max(xs) + pad, min(ys) - pad, max(ys) + pad)
    fx0, fx1, fy0, fy1 = frame
    if not (fx1 > fx0 and fy1 > fy0):
        raise ValueError(f"degenerate frame {frame}")
    scale = _VIEW / max(fx1 - fx0, fy1 - fy0)

    def to_view(p: tuple[float, float]) -> tuple[float, float]:
        return ((p[0] - fx0) * scale, _VIEW - (p[1] - fy0) * scale)

    def fmt(v: float) -> str:
        return f"{v:.3f}"

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="0 0 {_VIEW:g} {_VIEW:g}">',
        f'<rect x="0" y="0" width="{_VIEW:g}" height="{_VIEW:g}" fill="white"/>',
    ]
    for ln in lines:
        (x1, y1), (x2, y2) = to_view(ln.exit_point), to_view(ln.target_point)
        parts.append(
            f'<line x1="{fmt(x1)}" y1="{fmt(y1)}" x2="{fmt(x2)}" y2="{fmt(y2)}" '
            'stroke="#9ecae1" stroke-width="1"/>'
        )
    if curve is not None:
        for branch in _implicit_branches(curve):
            d = " ".join(
                ("M" if i == 0 else "L") + f"{fmt(vx)},{fmt(vy)}"
                for i, (vx, vy) in enumerate(to_view(p) for p in branch)
            )
            parts.append(f'<path d="{d}" fill="none" stroke="#de2d26" stroke-width="2"/>')
    if env_points:
        pts = " ".join(f"{fmt(vx)},{fmt(vy)}" for vx, vy in (to_view(p) for p in env_points))
        parts.append(f'<polyline points="{pts}" fill="none" stroke="#31a354" stroke-width="2"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _require_k(args, model: ModelId, parser: argparse.ArgumentParser) -> int | None:
    ops = MODEL_OPS.get(model)
    if ops is not None and ops.needs_k:
        if args.k is None:
            parser.error(f"model {model.value} requires --k")
        return args.k
    return None


def cmd_verify(args, parser) -> Report:
    model = _model_from_name(args.model)
    rep = Report("verify", model.value, {"n": args.n, "k": args.k})
    if model is ModelId.VSASM:
        if args.n % 2 == 0:
            parser.error("vsasm sizes are odd")
        size = args.n
        if size <= 7:
            matrices, hist = enumerate_vsasm(size)
            rep.add("vsasm count equals product formula", n_vsasm(size), len(matrices))
            rep.add(
                "refined formula equals brute-force histogram",
                [n_vsasm_refined(size, ell) for ell in range(1, size + 1)],
                hist,
            )
        if size >= 5:
            rep.add(
                "refined generating identity at t=1/2",
                True,
                raz_strog_check(size, Fraction(1, 2)),
            )
        rep.add(
            "refined counts sum to total",
            n_vsasm(size),
            sum(n_vsasm_refined(size, ell) for ell in range(1, size + 1)),
        )
        return rep
    k = _require_k(args, model, parser)
    ops = MODEL_OPS[model]
    try:
        matrix = ops.matrix(args.n, k)
    except ValueError:
        parser.error(f"invalid size n={args.n}, k={args.k} for {model.value}")
    det = det_bareiss(matrix)
    rep.add("bareiss det equals closed partition", fraction_str(Fraction(ops.partition(args.n, k))), fraction_str(det))
    lu = lu_exact(matrix)
    rep.add("lu pivot product equals bareiss det", fraction_str(det), fraction_str(lu.determinant()))
    rep.add("lu factors reconstruct the matrix", True, lu.reconstruct() == matrix)
    l_inv = ops.closed_l_inv(args.n, k)
    rep.add(
        "closed L inverse inverts lu L",
        True,
        (l_inv @ lu.L) == ExactMatrix.identity(matrix.rows),
    )
    mismatches = []
    linv_last = l_inv.row(l_inv.rows - 1)
    u_nn = lu.U[lu.U.rows - 1, lu.U.cols - 1]
    for ell in model_exit_range(model, args.n, k):
        closed = ops.one_point(args.n, k, ell)
        b = ops.b_column(args.n, k, ell)
        ratio = det_bareiss(matrix.with_column(matrix.cols - 1, b)) / det
        fast = det_ratio_last_column(linv_last, b, u_nn)
        if not closed == ratio == fast:
            mismatches.append(ell)
    rep.add("one-point closed form equals det ratio for every exit", [], mismatches)
    return rep


def cmd_onepoint(args, parser) -> Report:
    model = _model_from_name(args.model)
    k = _require_k(args, model, parser)
    rep = Report("onepoint", model.value, {"n": args.n, "k": args.k})
    try:
        profile = one_point_profile(model, args.n, k, exact_max=args.exact_max)
    except ValueError as exc:
        parser.error(str(exc))
    rows = ["ell,value"]
    rows += [f"{ell},{fraction_str(profile[ell])}" for ell in profile.ells]
    bounded = all(0 <= v <= 1 for v in profile.values)
    rep.add("profile values within [0, 1]", True, bounded)
    if model in MODEL_OPS:
        ref = MODEL_OPS[model].reference_ell(args.n, k)
        rep.add("reference exit has weight 1", "1/1", fraction_str(profile[ref]))
    if args.out:
        _write(Path(args.out), "\n".join(rows) + "\n")
        rep.artifacts.append(args.out)
    return rep


def cmd_oracle(args, parser) -> Report:
    model = _model_from_name(args.model)
    if model is ModelId.VSASM:
        if args.n % 2 == 0:
            parser.error("vsasm sizes are odd")
        size = args.n
        rep = Report("oracle", model.value, {"size": size})
        matrices, hist = enumerate_vsasm(size)
        rep.add("brute-force count equals product formula", n_vsasm(size), len(matrices))
        rep.add(
            "histogram equals refined formula",
            [n_vsasm_refined(size, ell) for ell in range(1, size + 1)],
            hist,
        )
        if args.dump:
            payload = "\n".join(json.dumps({"entries": m.entries}) for m in matrices)
            _write(Path(args.dump), payload + "\n")
            rep.artifacts.append(args.dump)
        return rep
    k = _require_k(args, model, parser)
    rep = Report("oracle", model.value, {"n": args.n, "k": args.k})
    ops = MODEL_OPS[model]
    spec = model_path_spec(model, args.n, k)
    det = det_bareiss(ops.matrix(args.n, k))
    count = count_nilp(spec)
    rep.add("brute-force family count equals determinant", fraction_str(det), f"{count}/1")
    exits = {
        ell: model_exit_point(model, args.n, ell, k) for ell in model_exit_range(model, args.n, k)
    }
    masses = count_nilp_by_exit(spec, list(exits.values()))
    ref_mass = masses[exits[MODEL_OPS[model].reference_ell(args.n, k)]]
    mismatch = [
        ell
        for ell, pt in exits.items()
        if Fraction(masses[pt], ref_mass) != ops.one_point(args.n, k, ell)
    ]
    rep.add("exit masses reproduce the one-point profile", [], mismatch)
    return rep


def _grid(zmin: float, zmax: float, count: int, spacing: str) -> list[float]:
    if spacing == "log":
        return [zmin * (zmax / zmin) ** (i / (count - 1)) for i in range(count)]
    return [zmin + (zmax - zmin) * i / (count - 1) for i in range(count)]


def cmd_saddle(args, parser) -> Report:
    model = _model_from_name(args.model)
    _run_config(args, parser, tolerance=args.tol)
    rep = Report(
        "saddle",
        model.value,
        {"n": args.n, "z": args.z, "x_model": args.x_model, "tolerance": args.tol},
    )
    try:
        result = finite_n_saddle(model, args.n, args.z, args.x_model)
        target = analytic_saddle(model, args.z, args.x_model)
    except ValueError as exc:
        parser.error(str(exc))
    rep.add("finite-n argmax matches analytic saddle", target, result.xi_hat, args.tol)
    rep.add("argmax plateau is non-degenerate", False, result.degenerate)
    return rep


def cmd_envelope(args, parser) -> Report:
    model = _model_from_name(args.model)
    _run_config(args, parser, tolerance=args.tol, grid_count=args.count)
    rep = Report(
        "envelope",
        model.value,
        {
            "z_min": args.z_min,
            "z_max": args.z_max,
            "count": args.count,
            "spacing": args.spacing,
            "x_model": args.x_model,
            "tolerance": args.tol,
        },
    )
    grid = _grid(args.z_min, args.z_max, args.count, args.spacing)
    try:
        x = args.x_model if model in (ModelId.DYCK_HALF_HEX, ModelId.RED_HALF_HEX) else None
        lines = tangent_family(model, grid, x)
    except ValueError as exc:
        parser.error(str(exc))
    points, _conds = envelope(lines)
    curve = curve_catalog(args.x_model)[model]
    residuals = [residual(curve, p) for p in points]
    rep.add("max envelope residual within tolerance", 0.0, max(residuals), args.tol)
    if args.out_prefix:
        csv_rows = ["z,xi_star,slope,intercept,env_x,env_y,residual"]
        for ln, pt, res in zip(lines[1:-1], points, residuals):
            xi = analytic_saddle(model, ln.z, x)
            csv_rows.append(
                f"{ln.z:.12g},{xi:.12g},{ln.slope:.12g},{ln.intercept:.12g},"
                f"{pt[0]:.12g},{pt[1]:.12g},{res:.12g}"
            )
        csv_path = Path(args.out_prefix + ".csv")
        _write(csv_path, "\n".join(csv_rows) + "\n")
        svg_path = Path(args.out_prefix + ".svg")
        shown = lines[:: max(1, len(lines) // 16)]
        _write(svg_path, emit_svg(shown, points, curve))
        rep.artifacts += [str(csv_path), str(svg_path)]
    return rep


def cmd_curve(args, parser) -> Report:
    model = _model_from_name(args.model)
    _run_config(args, parser, tolerance=args.tol)
    rep = Report("curve", model.value, {"samples": args.samples, "x_model": args.x_model})
    catalog = parametric_catalog()
    if model not in catalog:
        parser.error(f"no parametric form for {model.value}; available: "
                     + ", ".join(sorted(m.value for m in catalog)))
    par = catalog[model]
    t0, t1 = par.t_range
    rows = ["t,x,y,residual"]
    worst = 0.0
    for i in range(args.samples):
        t = t0 + (t1 - t0) * i / (args.samples - 1)
        p = par.point(t)
        res = residual(par.implicit, p)
        worst = max(worst, res)
        rows.append(f"{t:.12g},{p[0]:.12g},{p[1]:.12g},{res:.12g}")
    rep.add("max parametric residual within tolerance", 0.0, worst, args.tol)
    if args.out:
        _write(Path(args.out), "\n".join(rows) + "\n")
        rep.artifacts.append(args.out)
    return rep


def cmd_plot(args, parser) -> Report:
    model = _model_from_name(args.model)
    rep = Report(
        "plot",
        model.value,
        {"z_min": args.z_min, "z_max": args.z_max, "count": args.count, "x_model": args.x_model},
    )
    grid = _grid(args.z_min, args.z_max, args.count, args.spacing)
    x = args.x_model if model in (ModelId.DYCK_HALF_HEX, ModelId.RED_HALF_HEX) else None
    try:
        lines = tangent_family(model, grid, x)
    except ValueError as exc:
        parser.error(str(exc))
    points, _ = envelope(lines)
    curve = curve_catalog(args.x_model)[model]
    _write(Path(args.out), emit_svg(lines, points, curve))
    rep.artifacts.append(args.out)
    rep.add("figure written", True, Path(args.out).exists())
    return rep


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arctic",
        description="Exact lattice-path verification and arctic-curve extraction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    model_names = [m.value for m in ModelId]

    def add_common(p, with_n=True):
        p.add_argument("--model", required=True, choices=model_names)
        if with_n:
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--k", type=int, default=None)
        p.add_argument("--json-out", default=None, help="write the JSON report here")

    p = sub.add_parser("verify", help="exact det/LU/one-point verification")
    add_common(p)

    p = sub.add_parser("onepoint", help="exact one-point profile as CSV")
    add_common(p)
    p.add_argument("--out", default=None)
    p.add_argument("--exact-max", type=int, default=512)

    p = sub.add_parser("oracle", help="brute-force counts against determinants")
    add_common(p)
    p.add_argument("--dump", default=None, help="newline-delimited JSON dump of enumerated objects")

    p = sub.add_parser("saddle", help="finite-n saddle scan against the analytic saddle")
    add_common(p)
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--x-model", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=0.01)

    p = sub.add_parser("envelope", help="tangent family, envelope, and residuals")
    add_common(p, with_n=False)
    p.add_argument("--z-min", type=float, required=True)
    p.add_argument("--z-max", type=float, required=True)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--spacing", choices=["linear", "log"], default="linear")
    p.add_argument("--x-model", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=1e-3)
    p.add_argument("--out-prefix", default=None)

    p = sub.add_parser("curve", help="parametric curve samples and residuals")
    add_common(p, with_n=False)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--x-model", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--out", default=None)

    p = sub.add_parser("plot", help="SVG figure of tangents, envelope, and curve")
    add_common(p, with_n=False)
    p.add_argument("--z-min", type=float, required=True)
    p.add_argument("--z-max", type=float, required=True)
    p.add_argument("--count", type=int, default=24)
    p.add_argument("--spacing", choices=["linear", "log"], default="linear")
    p.add_argument("--x-model", type=float, default=1.0)
    p.add_argument("--out", required=True)
    return parser


_COMMANDS = {
    "verify": cmd_verify,
    "onepoint": cmd_onepoint,
    "oracle": cmd_oracle,
    "saddle": cmd_saddle,
    "envelope": cmd_envelope,
    "curve": cmd_curve,
    "plot": cmd_plot,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    report = _COMMANDS[args.command](args, parser)
    text = report.to_json()
    sys.stdout.write(text)
    if getattr(args, "json_out", None):
        _write(Path(args.json_out), text)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
