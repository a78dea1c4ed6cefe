"""Polar placement of values and the cubic edges joining adjacent axes.

Angles are degrees counterclockwise from +x and y points up; the SVG
writer is the only place that flips y.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

from .errors import BadParameter, DegenerateEdge, ShapeMismatch
from .model import AxisSpec, clamp_value


class Point2(NamedTuple):
    x: float
    y: float


class CubicCurve(NamedTuple):
    p0: Point2
    c1: Point2
    c2: Point2
    p3: Point2

    def reversed(self) -> "CubicCurve":
        return CubicCurve(self.p3, self.c2, self.c1, self.p0)


def polar(angle_deg: float, r: float) -> Point2:
    th = math.radians(angle_deg)
    return Point2(r * math.cos(th), r * math.sin(th))


def axis_radius(axis: AxisSpec, v: float) -> float:
    frac = (v - axis.vmin) / (axis.vmax - axis.vmin)
    return axis.r_inner + frac * (axis.r_outer - axis.r_inner)


def axis_position(axis: AxisSpec, v: float) -> Point2:
    """Point on ``axis`` for value ``v``; expects ``v`` already clamped."""
    return polar(axis.angle, axis_radius(axis, v))


def angular_difference(a1: float, a2: float) -> float:
    """Shortest signed turn in degrees from angle ``a1`` to ``a2``.

    Axes exactly opposite each other turn counterclockwise from the smaller
    normalized angle, so swapping the arguments always flips the sign.
    """
    a1 %= 360.0
    a2 %= 360.0
    d = (a2 - a1 + 180.0) % 360.0 - 180.0
    if d == -180.0 and a1 < a2:
        d = 180.0
    return d


def edge_curve(a1: AxisSpec, v1: float, a2: AxisSpec, v2: float, k: float) -> CubicCurve:
    """Cubic edge from value ``v1`` on ``a1`` to ``v2`` on ``a2``.

    Control points sit at the endpoints' own radii, turned a fraction ``k``
    of the inter-axis angle toward the other axis. ``k=0`` gives the straight
    chord; larger ``k`` bows the edge outward through the wedge.
    """
    if not 0.0 <= k <= 1.0:
        raise BadParameter(f"curvature must lie in [0, 1], got {k}")
    if a1.angle == a2.angle:
        raise DegenerateEdge(f"axes {a1.dim!r} and {a2.dim!r} share angle {a1.angle}")
    dtheta = angular_difference(a1.angle, a2.angle)
    r1 = axis_radius(a1, v1)
    r2 = axis_radius(a2, v2)
    return CubicCurve(
        polar(a1.angle, r1),
        polar(a1.angle + k * dtheta, r1),
        polar(a2.angle - k * dtheta, r2),
        polar(a2.angle, r2),
    )


def sample_curve(c: CubicCurve, t: float) -> Point2:
    """de Casteljau evaluation at ``t`` in [0, 1]; exact at both ends."""
    if not 0.0 <= t <= 1.0:
        raise BadParameter(f"t must lie in [0, 1], got {t}")
    if t == 0.0:
        return c.p0
    if t == 1.0:
        return c.p3
    s = 1.0 - t
    pts = list(c)
    while len(pts) > 1:
        pts = [Point2(s * a.x + t * b.x, s * a.y + t * b.y) for a, b in zip(pts, pts[1:])]
    return pts[0]


def sample_curve_array(c: CubicCurve, ts) -> np.ndarray:
    """Bernstein-form evaluation at many parameters; returns ``(len(ts), 2)``."""
    ts = np.asarray(ts, dtype=float).reshape(-1, 1)
    s = 1.0 - ts
    ctrl = np.asarray(c, dtype=float)
    return s**3 * ctrl[0] + 3 * s**2 * ts * ctrl[1] + 3 * s * ts**2 * ctrl[2] + ts**3 * ctrl[3]


def record_loop(values: Sequence[float], axes: Sequence[AxisSpec], k: float) -> list[CubicCurve]:
    """Closed loop of edges through one record's value on every axis.

    Values outside an axis range are pinned to its ends. With two axes there
    is a single edge, since the closing edge would retrace it.
    """
    if len(values) != len(axes):
        raise ShapeMismatch(f"{len(values)} values for {len(axes)} axes")
    m = len(axes)
    if m < 2:
        raise ShapeMismatch(f"a loop needs at least 2 axes, got {m}")
    vs = [clamp_value(a, float(v)) for a, v in zip(axes, values)]
    n_edges = 1 if m == 2 else m
    return [edge_curve(axes[i], vs[i], axes[(i + 1) % m], vs[(i + 1) % m], k) for i in range(n_edges)]
