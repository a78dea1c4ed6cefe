"""Scene construction for polar plots, dot-dash plots and panels, plus SVG output.

Scenes live in y-up plot units. Serialization flips y once and writes every
number with six decimals, so equal scenes always give identical bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Mapping, Optional, Sequence, Union
from xml.sax.saxutils import escape, quoteattr

import numpy as np

from .errors import IoError, LayoutError, UnknownDimension
from .geom import CubicCurve, Point2, axis_position, polar, record_loop
from .model import Dataset, FigureSpec, clamp_value, value_range
from .stats import pearson

# Okabe-Ito colorblind-safe palette
BLUE = "#0072B2"
ORANGE = "#E69F00"
PALETTE = (BLUE, ORANGE, "#009E73", "#D55E00", "#CC79A7", "#56B4E9", "#F0E442", "#000000")
FIXED_GROUP_COLORS = {"low": BLUE, "high": ORANGE}
DEFAULT_EDGE_COLOR = BLUE
DENSITY_DOT_COLOR = ORANGE
INK = "#222222"

LABEL_PAD = 1.6  # canvas half-width as a multiple of the outer radius


@dataclass(frozen=True)
class Line:
    p0: Point2
    p1: Point2
    stroke: str = INK
    width: float = 0.01
    opacity: float = 1.0
    role: str = "line"


@dataclass(frozen=True)
class CubicPath:
    curves: tuple
    stroke: str = INK
    width: float = 0.005
    opacity: float = 1.0
    role: str = "edge"


@dataclass(frozen=True)
class Circle:
    center: Point2
    radius: float
    fill: str = INK
    opacity: float = 1.0
    role: str = "dot"


@dataclass(frozen=True)
class Text:
    anchor: Point2
    string: str
    size: float
    angle: float = 0.0
    align: str = "middle"
    fill: str = INK
    role: str = "label"


Primitive = Union[Line, CubicPath, Circle, Text]


@dataclass(frozen=True)
class Scene:
    """Ordered primitives (paint order) over a canvas rectangle in plot units."""

    primitives: tuple = ()
    xmin: float = 0.0
    ymin: float = 0.0
    width: float = 1.0
    height: float = 1.0
    background: str = "#ffffff"

    def count(self, kind=None, role: Optional[str] = None) -> int:
        return sum(
            1 for p in self.primitives
            if (kind is None or isinstance(p, kind)) and (role is None or p.role == role)
        )

    def of_role(self, role: str) -> list:
        return [p for p in self.primitives if p.role == role]


def group_color_map(labels: Optional[Sequence[str]], overrides: Mapping[str, str] = ()) -> dict:
    """Color per distinct label: overrides, then low/high, then the palette in first-seen order."""
    colors = dict(overrides)
    if labels is None:
        return colors
    free = [c for c in PALETTE if c not in colors.values()]
    i = 0
    for label in dict.fromkeys(labels):
        if label in colors:
            continue
        if label in FIXED_GROUP_COLORS:
            colors[label] = FIXED_GROUP_COLORS[label]
            continue
        colors[label] = free[i % len(free)] if free else PALETTE[i % len(PALETTE)]
        i += 1
    return colors


def default_edge_opacity(n: int) -> float:
    return 0.15 if n > 100 else 0.6


def format_value(v: float) -> str:
    """Short axis-end label: three significant digits, no exponent."""
    s = f"{v:.3g}"
    if "e" in s:
        s = f"{v:,.0f}" if abs(v) >= 1 else f"{v:.2e}"
    if s == "-0":
        s = "0"
    return s


def _anchor_for(angle_deg: float) -> str:
    """Text anchor so a label placed in direction ``angle_deg`` grows away from the origin."""
    c = math.cos(math.radians(angle_deg))
    if c > 0.3:
        return "start"
    if c < -0.3:
        return "end"
    return "middle"


def _offset(p: Point2, angle_deg: float, dist: float) -> Point2:
    q = polar(angle_deg, dist)
    return Point2(p.x + q.x, p.y + q.y)


CHAR_WIDTH = 0.55  # rough glyph advance as a fraction of font size


def _text_extent(prims) -> float:
    """Largest |x| or |y| reached by any label, from an estimated text width."""
    ext = 0.0
    for p in prims:
        if not isinstance(p, Text):
            continue
        w = CHAR_WIDTH * p.size * len(p.string)
        lo, hi = {"start": (0.0, w), "end": (-w, 0.0)}.get(p.align, (-w / 2, w / 2))
        ext = max(ext, abs(p.anchor.x + lo), abs(p.anchor.x + hi), abs(p.anchor.y) + p.size / 2)
    return ext


def render_p2cp(dataset: Dataset, spec: FigureSpec) -> Scene:
    """One polar parallel-coordinates plot.

    Paint order: axes, then every record's loop (record order, then axis
    order), then density dots when enabled, then labels.
    """
    for d in spec.dims:
        if d not in dataset.dim_names:
            raise UnknownDimension(f"figure axis {d!r} not in dataset dims {list(dataset.dim_names)}")
    axes = spec.axes
    R = max(a.r_outer for a in axes)
    prims: list = []

    for a in axes:
        prims.append(Line(polar(a.angle, a.r_inner), polar(a.angle, a.r_outer), INK, 0.008 * R, 1.0, "axis"))

    values = np.column_stack([dataset.column(d) for d in spec.dims]) if dataset.n else np.empty((0, len(axes)))
    opacity = spec.edge_opacity if spec.edge_opacity is not None else default_edge_opacity(dataset.n)
    colors = group_color_map(dataset.group, spec.group_colors)
    for i in range(dataset.n):
        color = colors[dataset.group[i]] if dataset.group is not None else DEFAULT_EDGE_COLOR
        for curve in record_loop(values[i], axes, spec.curvature):
            prims.append(CubicPath((curve,), color, 0.004 * R, opacity, "edge"))

    if spec.density_dots:
        for j, a in enumerate(axes):
            for i in range(dataset.n):
                p = axis_position(a, clamp_value(a, float(values[i, j])))
                prims.append(Circle(p, 0.012 * R, DENSITY_DOT_COLOR, 0.2, "density-dot"))

    size = 0.07 * R
    for a in axes:
        prims.append(Text(polar(a.angle, a.r_outer + 0.08 * R), a.dim, size, align=_anchor_for(a.angle),
                          role="axis-label"))
        side = a.angle - 90.0
        for r, v in ((a.r_inner, a.vmin), (a.r_outer, a.vmax)):
            prims.append(Text(_offset(polar(a.angle, r), side, 0.04 * R), format_value(v), 0.75 * size,
                              align=_anchor_for(side), role="range-label"))

    half = max(LABEL_PAD * R, _text_extent(prims) + 0.05 * R)
    top = 0.25 * R if spec.title else 0.0
    if spec.title:
        prims.append(Text(Point2(0.0, half + 0.08 * R), spec.title, 1.2 * size, role="title"))
    return Scene(tuple(prims), -half, -half, 2 * half, 2 * half + top)


@dataclass(frozen=True)
class DotDashStyle:
    group_colors: Mapping[str, str] = field(default_factory=dict)
    point_radius: float = 0.012
    point_opacity: float = 0.6
    dash_length: float = 0.04
    annotate: bool = True
    title: str = ""


def _unit_scale(col: np.ndarray):
    if col.size == 0:
        return lambda v: 0.5
    lo, hi = float(col.min()), float(col.max())
    if hi == lo:
        return lambda v: 0.5
    pad = 0.04 * (hi - lo)
    lo, hi = lo - pad, hi + pad
    return lambda v: (v - lo) / (hi - lo)


def render_dotdash(dataset: Dataset, dim_x: str, dim_y: str, style: Optional[DotDashStyle] = None) -> Scene:
    """Scatterplot of two dimensions with a rug of dashes along each axis.

    Draws one point per record, one x-dash and one y-dash per record (in
    that order), axis labels, and a title carrying the Pearson r if asked.
    """
    style = style or DotDashStyle()
    x = dataset.column(dim_x)
    y = dataset.column(dim_y)
    sx, sy = _unit_scale(x), _unit_scale(y)
    colors = group_color_map(dataset.group, style.group_colors)
    prims: list = []

    def color(i):
        return colors[dataset.group[i]] if dataset.group is not None else DEFAULT_EDGE_COLOR

    for i in range(dataset.n):
        prims.append(Circle(Point2(sx(x[i]), sy(y[i])), style.point_radius, color(i), style.point_opacity, "point"))
    gap, L = 0.03, style.dash_length
    for i in range(dataset.n):
        u = sx(x[i])
        prims.append(Line(Point2(u, -gap - L), Point2(u, -gap), color(i), 0.004, 0.5, "x-dash"))
    for i in range(dataset.n):
        v = sy(y[i])
        prims.append(Line(Point2(-gap - L, v), Point2(-gap, v), color(i), 0.004, 0.5, "y-dash"))

    prims.append(Text(Point2(0.5, -0.17), dim_x, 0.05, role="axis-label"))
    prims.append(Text(Point2(-0.15, 0.5), dim_y, 0.05, angle=90.0, role="axis-label"))
    title = style.title
    if style.annotate:
        try:
            r = f"r = {pearson(x, y):.2f}"
        except ValueError:
            r = "r = n/a"
        title = f"{title}  {r}" if title else r
    if title:
        prims.append(Text(Point2(0.5, 1.07), title, 0.06, role="title"))
    return Scene(tuple(prims), -0.25, -0.25, 1.35, 1.5)


def _transform_point(p: Point2, s: float, dx: float, dy: float) -> Point2:
    return Point2(p.x * s + dx, p.y * s + dy)


def transform_primitive(p, s: float, dx: float, dy: float):
    """Uniformly scale by ``s`` then translate by (dx, dy)."""
    t = lambda q: _transform_point(q, s, dx, dy)  # noqa: E731
    if isinstance(p, Line):
        return replace(p, p0=t(p.p0), p1=t(p.p1), width=p.width * s)
    if isinstance(p, CubicPath):
        curves = tuple(CubicCurve(*(t(q) for q in c)) for c in p.curves)
        return replace(p, curves=curves, width=p.width * s)
    if isinstance(p, Circle):
        return replace(p, center=t(p.center), radius=p.radius * s)
    if isinstance(p, Text):
        return replace(p, anchor=t(p.anchor), size=p.size * s)
    raise TypeError(f"unknown primitive {p!r}")


def shared_ranges(figures) -> dict:
    """Per-dimension (vmin, vmax) pooled over every dataset showing that dimension."""
    pooled: dict = {}
    clips: dict = {}
    for ds, spec, _ in figures:
        for d in spec.dims:
            pooled.setdefault(d, []).append(ds.column(d))
            clips.setdefault(d, spec.clip)
    return {d: value_range(np.concatenate(cols), clips[d], d) for d, cols in pooled.items()}


def render_panel(figures: Sequence, rows: int, cols: int, share_ranges: bool = False, title: str = "") -> Scene:
    """Small multiples of polar plots on a ``rows`` x ``cols`` grid, row-major.

    ``figures`` holds ``(dataset, FigureSpec, subtitle)`` triples. With
    ``share_ranges`` every axis showing the same dimension gets one value
    range computed over all member datasets (respecting the figure clip).
    """
    figures = list(figures)
    if rows < 1 or cols < 1:
        raise LayoutError(f"grid must be at least 1x1, got {rows}x{cols}")
    if len(figures) > rows * cols:
        raise LayoutError(f"{len(figures)} figures do not fit a {rows}x{cols} grid")
    if share_ranges and figures:
        ranges = shared_ranges(figures)
        figures = [
            (ds, replace(spec, axes=[a.with_range(*ranges[a.dim]) for a in spec.axes]), sub)
            for ds, spec, sub in figures
        ]
    subs = [render_p2cp(ds, replace(spec, title=sub)) for ds, spec, sub in figures]
    cell = max([max(s.width, s.height) for s in subs], default=1.0)

    prims: list = []
    for k, sub in enumerate(subs):
        r, c = divmod(k, cols)
        cx = (c + 0.5) * cell
        cy = (rows - r - 0.5) * cell
        dx = cx - (sub.xmin + sub.width / 2)
        dy = cy - (sub.ymin + sub.height / 2)
        prims.extend(transform_primitive(p, 1.0, dx, dy) for p in sub.primitives)
    top = 0.0
    if title:
        top = 0.08 * cell
        prims.append(Text(Point2(cols * cell / 2, rows * cell + 0.03 * cell), title, 0.04 * cell, role="title"))
    return Scene(tuple(prims), 0.0, 0.0, cols * cell, rows * cell + top)


# -- SVG ---------------------------------------------------------------------

def fmt(v: float) -> str:
    s = f"{float(v):.6f}"
    return "0.000000" if s == "-0.000000" else s


def _svg_element(p, X, Y) -> str:
    if isinstance(p, Line):
        return (f'<line class="{p.role}" x1="{fmt(X(p.p0.x))}" y1="{fmt(Y(p.p0.y))}" '
                f'x2="{fmt(X(p.p1.x))}" y2="{fmt(Y(p.p1.y))}" stroke="{p.stroke}" '
                f'stroke-width="{fmt(p.width)}" stroke-opacity="{fmt(p.opacity)}"/>')
    if isinstance(p, CubicPath):
        parts = []
        for i, c in enumerate(p.curves):
            if i == 0:
                parts.append(f"M {fmt(X(c.p0.x))} {fmt(Y(c.p0.y))}")
            parts.append("C " + " ".join(f"{fmt(X(q.x))} {fmt(Y(q.y))}" for q in (c.c1, c.c2, c.p3)))
        return (f'<path class="{p.role}" d="{" ".join(parts)}" fill="none" stroke="{p.stroke}" '
                f'stroke-width="{fmt(p.width)}" stroke-opacity="{fmt(p.opacity)}"/>')
    if isinstance(p, Circle):
        return (f'<circle class="{p.role}" cx="{fmt(X(p.center.x))}" cy="{fmt(Y(p.center.y))}" '
                f'r="{fmt(p.radius)}" fill="{p.fill}" fill-opacity="{fmt(p.opacity)}"/>')
    if isinstance(p, Text):
        x, y = X(p.anchor.x), Y(p.anchor.y)
        rot = f' transform="rotate({fmt(-p.angle)} {fmt(x)} {fmt(y)})"' if p.angle else ""
        return (f'<text class="{p.role}" x="{fmt(x)}" y="{fmt(y)}" font-size="{fmt(p.size)}" '
                f'text-anchor="{p.align}" dominant-baseline="middle" fill="{p.fill}"{rot}>'
                f"{escape(p.string)}</text>")
    raise TypeError(f"unknown primitive {p!r}")


def scene_to_svg(scene: Scene, px_per_unit: float = 200.0) -> str:
    """Standalone SVG 1.1 document for ``scene``."""
    X = lambda x: x - scene.xmin  # noqa: E731
    Y = lambda y: scene.ymin + scene.height - y  # noqa: E731
    w, h = scene.width, scene.height
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{fmt(w * px_per_unit)}" '
        f'height="{fmt(h * px_per_unit)}" viewBox="0 0 {fmt(w)} {fmt(h)}" font-family="sans-serif">',
        f'<rect x="0.000000" y="0.000000" width="{fmt(w)}" height="{fmt(h)}" fill={quoteattr(scene.background)}/>',
    ]
    lines.extend(_svg_element(p, X, Y) for p in scene.primitives)
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_svg(scene: Scene, path, px_per_unit: float = 200.0) -> Path:
    path = Path(path)
    try:
        path.write_bytes(scene_to_svg(scene, px_per_unit).encode("utf-8"))
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
    return path


def render_dotdash_row(dataset: Dataset, pairs: Sequence, style: Optional[DotDashStyle] = None) -> Scene:
    """Dot-dash plots for several dimension pairs side by side."""
    subs = [render_dotdash(dataset, a, b, style) for a, b in pairs]
    prims: list = []
    x = 0.0
    height = max((s.height for s in subs), default=1.0)
    for s in subs:
        dx = x - s.xmin
        dy = -s.ymin
        prims.extend(transform_primitive(p, 1.0, dx, dy) for p in s.primitives)
        x += s.width
    return Scene(tuple(prims), 0.0, 0.0, max(x, 1.0), height)


def loop_count(n: int, n_axes: int) -> int:
    """Number of edge paths a polar plot draws for ``n`` records."""
    return n * (1 if n_axes == 2 else n_axes)


__all__ = [
    "Line", "CubicPath", "Circle", "Text", "Scene", "DotDashStyle",
    "render_p2cp", "render_dotdash", "render_dotdash_row", "render_panel",
    "scene_to_svg", "write_svg", "group_color_map", "shared_ranges", "loop_count",
    "BLUE", "ORANGE", "PALETTE",
]
