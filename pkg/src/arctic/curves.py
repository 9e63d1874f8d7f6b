"""Closed-form limit curves, residuals, and boundary tangency data.

Every curve is a bivariate polynomial of total degree <= 2 together with the
(x, y) window on which the model derivation is valid.  Residuals are
gradient-normalized so one tolerance means the same geometric distance across
curves with very different coefficient scales.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .models import ModelId

__all__ = [
    "ImplicitCurve",
    "ParametricCurve",
    "curve_catalog",
    "parametric_catalog",
    "residual",
    "vsasm_parametric",
    "aztec_parametric",
    "tangency_points",
]


@dataclass(frozen=True)
class ImplicitCurve:
    """P(x, y) = 0 with coefficients indexed by (x power, y power)."""

    name: str
    coefficients: tuple[tuple[tuple[int, int], float], ...]
    window: tuple[tuple[float, float], tuple[float, float]]

    def __post_init__(self) -> None:
        if not any(c != 0 for _, c in self.coefficients):
            raise ValueError("identically zero polynomial")
        (x0, x1), (y0, y1) = self.window
        if not (x0 < x1 and y0 < y1):
            raise ValueError(f"empty window {self.window}")

    def value(self, x: float, y: float) -> float:
        return sum(c * x**i * y**j for (i, j), c in self.coefficients)

    def gradient(self, x: float, y: float) -> tuple[float, float]:
        gx = sum(c * i * x ** (i - 1) * y**j for (i, j), c in self.coefficients if i > 0)
        gy = sum(c * j * x**i * y ** (j - 1) for (i, j), c in self.coefficients if j > 0)
        return gx, gy

    def contains(self, point: tuple[float, float]) -> bool:
        (x0, x1), (y0, y1) = self.window
        x, y = point
        return x0 <= x <= x1 and y0 <= y <= y1


@dataclass(frozen=True)
class ParametricCurve:
    name: str
    t_range: tuple[float, float]
    point: Callable[[float], tuple[float, float]]
    implicit: ImplicitCurve


def residual(curve: ImplicitCurve, point: tuple[float, float]) -> float:
    """|P| / max(|grad P|, 1): a first-order distance proxy.

    Points outside the curve's window are still evaluated; window membership
    is the caller's concern (see :meth:`ImplicitCurve.contains`).
    """
    x, y = point
    gx, gy = curve.gradient(x, y)
    return abs(curve.value(x, y)) / max(math.hypot(gx, gy), 1.0)


def _circle() -> ImplicitCurve:
    # x^2 + (y - 1)^2 = 1/2, inscribed in the scaled diamond |x| + |y-1| = 1.
    return ImplicitCurve(
        "circle",
        (((2, 0), 1.0), ((0, 2), 1.0), ((0, 1), -2.0), ((0, 0), 0.5)),
        ((-1.0, 1.0), (0.0, 2.0)),
    )


def _ellipse(x_model: float) -> ImplicitCurve:
    # x_model^2 v^2 - 4 (1 + x_model) u (2 x_model - u) = 0 in the (u, v) frame.
    if x_model <= 0:
        raise ValueError(f"x_model must be > 0, got {x_model}")
    return ImplicitCurve(
        f"ellipse(x={x_model:g})",
        (
            ((0, 2), x_model**2),
            ((1, 0), -8.0 * x_model * (1.0 + x_model)),
            ((2, 0), 4.0 * (1.0 + x_model)),
        ),
        ((0.0, 2.0 * x_model), (0.0, 2.0 + 2.0 * x_model)),
    )


def _parabola() -> ImplicitCurve:
    return ImplicitCurve(
        "parabola",
        (((1, 0), -8.0), ((2, 0), 4.0), ((0, 1), 8.0), ((1, 1), -4.0), ((0, 2), 1.0)),
        ((0.0, 2.0), (0.0, 1.0)),
    )


def _vsasm_curve() -> ImplicitCurve:
    # 4(1-x) - 4(1-x)^2 + 4y - 4y^2 + 4(1-x)y - 1 = 0, expanded in x and y.
    return ImplicitCurve(
        "vsasm",
        (
            ((0, 0), -1.0),
            ((1, 0), 4.0),
            ((2, 0), -4.0),
            ((0, 1), 8.0),
            ((1, 1), -4.0),
            ((0, 2), -4.0),
        ),
        ((0.5, 1.0), (0.0, 0.5)),
    )


def curve_catalog(x_model: float = 1.0) -> dict[ModelId, ImplicitCurve]:
    """The limit curve of every model; x_model binds the half-hexagon width."""
    ellipse = _ellipse(x_model)
    parabola = _parabola()
    return {
        ModelId.AZTEC: _circle(),
        ModelId.DYCK_HALF_HEX: ellipse,
        ModelId.RED_HALF_HEX: ellipse,
        ModelId.STAIRCASE: parabola,
        ModelId.STAIRCASE_ALT: parabola,
        ModelId.VSASM: _vsasm_curve(),
    }


def vsasm_parametric(t: float) -> tuple[float, float]:
    """Parametric point of the osculating-path limit curve, t in [0, 1]."""
    if not 0 <= t <= 1:
        raise ValueError(f"t={t} outside [0, 1]")
    s = math.sqrt(t * t - t + 1.0)
    return (1.0 + t) / (2.0 * s), (-2.0 + t + 2.0 * s) / (2.0 * s)


def aztec_parametric(z: float) -> tuple[float, float]:
    """Parametric point of the inscribed circle for target parameter z > 1."""
    if z <= 1:
        raise ValueError(f"z={z} outside (1, inf)")
    d = 2.0 * z * (z - 1.0) + 1.0
    return 0.5 - (z - 1.0) * (2.0 * z - 1.0) / d, 1.5 + (z - 1.0) / d


def parametric_catalog() -> dict[ModelId, ParametricCurve]:
    return {
        ModelId.AZTEC: ParametricCurve("circle-arc", (1.0 + 1e-9, 64.0), aztec_parametric, _circle()),
        ModelId.VSASM: ParametricCurve("vsasm-arc", (0.0, 1.0), vsasm_parametric, _vsasm_curve()),
    }


def tangency_points(model: ModelId, x_model: float = 1.0) -> list[tuple[float, float]]:
    """Boundary contact points of each limit curve, in derivation order."""
    if model is ModelId.AZTEC:
        return [(0.5, 1.5), (-0.5, 1.5), (0.5, 0.5), (-0.5, 0.5)]
    if model is ModelId.DYCK_HALF_HEX:
        x = x_model
        v = 4 * (1 + x) / (2 + x)
        return [(2 * x / (2 + x), v), (2 * x * (1 + x) / (2 + x), v)]
    if model is ModelId.RED_HALF_HEX:
        x = x_model
        return [(2 * x * (1 + x) / (2 + x), 4 * (1 + x) / (2 + x)), (2 * x, 0.0)]
    if model in (ModelId.STAIRCASE, ModelId.STAIRCASE_ALT):
        return [(0.0, 0.0), (2.0, 0.0)]
    if model is ModelId.VSASM:
        return [(0.5, 0.0), (1.0, 0.5)]
    raise ValueError(f"unknown model {model}")
