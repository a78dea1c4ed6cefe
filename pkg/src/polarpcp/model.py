"""Datasets and the axis and figure layout objects built from them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Mapping, Optional, Sequence

import numpy as np

from .errors import BadClip, BadParameter, DegenerateRange, ShapeMismatch, UnknownDimension

DEFAULT_START_ANGLE = 90.0
DEFAULT_R_INNER = 0.2
DEFAULT_R_OUTER = 1.0
DEFAULT_CURVATURE = 0.5


@dataclass(frozen=True, eq=False)
class Dataset:
    """A rectangular table of named numeric dimensions.

    ``columns`` holds one sequence per entry of ``dim_names``. Records with a
    missing or non-finite value in any column are dropped on construction;
    the number removed is kept in ``dropped``. ``group`` and ``record_ids``
    are optional per-record labels carried alongside the values.
    """

    dim_names: Sequence[str]
    columns: Sequence[Sequence[float]]
    group: Optional[Sequence[str]] = None
    record_ids: Optional[Sequence[str]] = None
    dropped: int = field(default=0)

    def __post_init__(self):
        names = tuple(str(d) for d in self.dim_names)
        if len(set(names)) != len(names):
            raise BadParameter(f"duplicate dimension names in {names}")
        if len(self.columns) != len(names):
            raise ShapeMismatch(f"{len(self.columns)} columns for {len(names)} dimension names")
        cols = [np.asarray(c, dtype=float).reshape(-1) for c in self.columns]
        lengths = {len(c) for c in cols}
        if len(lengths) > 1:
            raise ShapeMismatch(f"columns have unequal lengths {sorted(lengths)}")
        n = lengths.pop() if lengths else _label_length(self.group, self.record_ids)
        values = np.column_stack(cols) if cols else np.empty((n, 0))

        group = None if self.group is None else tuple(str(g) for g in self.group)
        ids = None if self.record_ids is None else tuple(str(i) for i in self.record_ids)
        for label, seq in (("group", group), ("record_ids", ids)):
            if seq is not None and len(seq) != n:
                raise ShapeMismatch(f"{label} has {len(seq)} entries for {n} records")

        keep = np.isfinite(values).all(axis=1)
        dropped = int(self.dropped)
        if not keep.all():
            dropped += int((~keep).sum())
            values = values[keep]
            idx = np.flatnonzero(keep)
            group = None if group is None else tuple(group[i] for i in idx)
            ids = None if ids is None else tuple(ids[i] for i in idx)
        values = np.ascontiguousarray(values)
        values.setflags(write=False)

        object.__setattr__(self, "dim_names", names)
        object.__setattr__(self, "columns", tuple(values[:, j] for j in range(values.shape[1])))
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "record_ids", ids)
        object.__setattr__(self, "dropped", dropped)
        object.__setattr__(self, "_values", values)

    @classmethod
    def from_mapping(cls, columns: Mapping[str, Sequence[float]], group=None, record_ids=None) -> "Dataset":
        return cls(list(columns), list(columns.values()), group=group, record_ids=record_ids)

    @property
    def n(self) -> int:
        return self._values.shape[0]

    @property
    def values(self) -> np.ndarray:
        """Read-only ``(n, d)`` array of the data, columns in ``dim_names`` order."""
        return self._values

    def index(self, dim: str) -> int:
        try:
            return self.dim_names.index(dim)
        except ValueError:
            raise UnknownDimension(f"unknown dimension {dim!r}; have {list(self.dim_names)}") from None

    def column(self, dim: str) -> np.ndarray:
        return self.columns[self.index(dim)]

    def take(self, indices) -> "Dataset":
        """Subset of records by position, labels carried along."""
        idx = np.asarray(indices, dtype=int).reshape(-1)
        return Dataset(
            self.dim_names,
            [c[idx] for c in self.columns],
            group=None if self.group is None else [self.group[i] for i in idx],
            record_ids=None if self.record_ids is None else [self.record_ids[i] for i in idx],
        )

    def with_group(self, group: Optional[Sequence[str]]) -> "Dataset":
        return Dataset(self.dim_names, self.columns, group=group, record_ids=self.record_ids)

    def with_columns(self, updates: Mapping[str, Sequence[float]]) -> "Dataset":
        cols = [updates.get(d, c) for d, c in zip(self.dim_names, self.columns)]
        return Dataset(self.dim_names, cols, group=self.group, record_ids=self.record_ids)

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            self.dim_names == other.dim_names
            and self.group == other.group
            and self.record_ids == other.record_ids
            and self._values.shape == other._values.shape
            and bool(np.array_equal(self._values, other._values))
        )

    def __hash__(self):
        return hash((self.dim_names, self.n))

    def __repr__(self):
        return f"Dataset(n={self.n}, dims={list(self.dim_names)}, grouped={self.group is not None})"


def _label_length(*seqs) -> int:
    for s in seqs:
        if s is not None:
            return len(s)
    return 0


def concat(datasets: Sequence[Dataset]) -> Dataset:
    """Stack datasets that share the same dimensions, in order."""
    if not datasets:
        raise BadParameter("nothing to concatenate")
    dims = datasets[0].dim_names
    for ds in datasets[1:]:
        if ds.dim_names != dims:
            raise ShapeMismatch(f"dimension mismatch: {ds.dim_names} vs {dims}")
    cols = [np.concatenate([ds.columns[j] for ds in datasets]) for j in range(len(dims))]

    def labels(attr):
        seqs = [getattr(ds, attr) for ds in datasets]
        if all(s is None for s in seqs):
            return None
        out = []
        for ds, s in zip(datasets, seqs):
            out.extend(s if s is not None else [""] * ds.n)
        return out

    return Dataset(dims, cols, group=labels("group"), record_ids=labels("record_ids"))


def select_dims(dataset: Dataset, dims: Sequence[str]) -> Dataset:
    """Project onto ``dims`` (in the order given), keeping group and ids."""
    dims = list(dims)
    if not dims:
        raise UnknownDimension("empty dimension selection")
    cols = [dataset.column(d) for d in dims]
    return Dataset(dims, cols, group=dataset.group, record_ids=dataset.record_ids)


@dataclass(frozen=True)
class AxisSpec:
    """One radial axis. ``angle`` is in degrees, counterclockwise from +x."""

    dim: str
    angle: float
    r_inner: float
    r_outer: float
    vmin: float
    vmax: float

    def __post_init__(self):
        if not (0.0 <= self.r_inner < self.r_outer):
            raise BadParameter(f"axis {self.dim!r}: need 0 <= r_inner < r_outer, got {self.r_inner}, {self.r_outer}")
        if not (math.isfinite(self.vmin) and math.isfinite(self.vmax)) or not self.vmax > self.vmin:
            raise DegenerateRange(f"axis {self.dim!r}: empty value range [{self.vmin}, {self.vmax}]")
        object.__setattr__(self, "angle", float(self.angle) % 360.0)

    def with_range(self, vmin: float, vmax: float) -> "AxisSpec":
        return replace(self, vmin=float(vmin), vmax=float(vmax))


def _check_clip(clip):
    if clip is None:
        return None
    try:
        lo, hi = (float(q) for q in clip)
    except (TypeError, ValueError):
        raise BadClip(f"clip must be a (lo, hi) quantile pair, got {clip!r}") from None
    if not (0.0 <= lo < hi <= 1.0):
        raise BadClip(f"clip quantiles must satisfy 0 <= lo < hi <= 1, got ({lo}, {hi})")
    return lo, hi


def value_range(values, clip=None, dim="?"):
    """(vmin, vmax) of ``values``, or their clip quantiles when ``clip`` is given."""
    from .stats import quantile

    clip = _check_clip(clip)
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise DegenerateRange(f"dimension {dim!r} has no values")
    if clip is None:
        vmin, vmax = float(values.min()), float(values.max())
    else:
        vmin, vmax = quantile(values, clip[0]), quantile(values, clip[1])
    if not vmax > vmin:
        raise DegenerateRange(f"dimension {dim!r} is constant over [{vmin}, {vmax}]")
    return vmin, vmax


def build_axes(
    dataset: Dataset,
    dims: Sequence[str],
    r_inner: float = DEFAULT_R_INNER,
    r_outer: float = DEFAULT_R_OUTER,
    clip=None,
    start_angle: float = DEFAULT_START_ANGLE,
) -> list[AxisSpec]:
    """Evenly spaced axes, one per dimension, first one at ``start_angle``.

    Each axis spans the min/max of its column, or the ``clip`` quantiles of
    it when a ``(lo_q, hi_q)`` pair is given.
    """
    dims = list(dims)
    if not dims:
        raise UnknownDimension("no dimensions requested")
    clip = _check_clip(clip)
    step = 360.0 / len(dims)
    axes = []
    for i, dim in enumerate(dims):
        vmin, vmax = value_range(dataset.column(dim), clip, dim)
        axes.append(AxisSpec(dim, start_angle + i * step, r_inner, r_outer, vmin, vmax))
    return axes


def clamp_value(axis: AxisSpec, v: float) -> float:
    return min(max(v, axis.vmin), axis.vmax)


@dataclass(frozen=True)
class FigureSpec:
    """Everything needed to draw one polar plot besides the data.

    ``edge_opacity=None`` lets the renderer pick a default from the record
    count. Group labels missing from ``group_colors`` get palette colors in
    order of first appearance.
    """

    axes: Sequence[AxisSpec]
    curvature: float = DEFAULT_CURVATURE
    edge_opacity: Optional[float] = None
    group_colors: Mapping[str, str] = field(default_factory=dict)
    density_dots: bool = False
    clip: Optional[tuple] = None
    title: str = ""

    def __post_init__(self):
        axes = tuple(self.axes)
        if len(axes) < 2:
            raise BadParameter(f"a figure needs at least 2 axes, got {len(axes)}")
        angles = [a.angle for a in axes]
        if len(set(angles)) != len(angles):
            raise BadParameter(f"axis angles must be distinct, got {angles}")
        if not 0.0 <= self.curvature <= 1.0:
            raise BadParameter(f"curvature must lie in [0, 1], got {self.curvature}")
        if self.edge_opacity is not None and not 0.0 < self.edge_opacity <= 1.0:
            raise BadParameter(f"edge_opacity must lie in (0, 1], got {self.edge_opacity}")
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "clip", _check_clip(self.clip))
        object.__setattr__(self, "group_colors", dict(self.group_colors))

    @property
    def dims(self) -> list[str]:
        return [a.dim for a in self.axes]


def figure_spec(dataset: Dataset, dims: Sequence[str], *, r_inner=DEFAULT_R_INNER, r_outer=DEFAULT_R_OUTER,
                start_angle=DEFAULT_START_ANGLE, clip=None, **options) -> FigureSpec:
    """Shortcut: build axes for ``dims`` and wrap them in a FigureSpec."""
    axes = build_axes(dataset, dims, r_inner=r_inner, r_outer=r_outer, clip=clip, start_angle=start_angle)
    return FigureSpec(axes, clip=clip, **options)
