"""Correlation, quantiles, extreme subsets, standardization and PCA.

Variances and covariances use the population (1/n) convention throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (
    BadParameter,
    DegenerateSubset,
    DegenerateVariance,
    EmptyInput,
    ShapeMismatch,
)
from .model import Dataset


def pearson(x, y) -> float:
    """Product-moment correlation of two equal-length samples."""
    x = np.asarray(x, dtype=float).reshape(-1)
    y = np.asarray(y, dtype=float).reshape(-1)
    if x.shape != y.shape:
        raise ShapeMismatch(f"lengths differ: {x.size} vs {y.size}")
    if x.size < 2:
        raise ShapeMismatch(f"need at least 2 observations, got {x.size}")
    xc = x - x.mean()
    yc = y - y.mean()
    sxx = float(np.dot(xc, xc))
    syy = float(np.dot(yc, yc))
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateVariance("pearson correlation of a constant sample is undefined")
    r = float(np.dot(xc, yc)) / math.sqrt(sxx * syy)
    return min(1.0, max(-1.0, r))


def pearson_matrix(dataset: Dataset, dims: Sequence[str]) -> np.ndarray:
    cols = [dataset.column(d) for d in dims]
    m = np.eye(len(cols))
    for i in range(len(cols)):
        for j in range(i + 1, len(cols)):
            m[i, j] = m[j, i] = pearson(cols[i], cols[j])
    return m


def quantile(xs, q: float) -> float:
    """Linear-interpolation sample quantile.

    With ``s`` the sorted sample and ``h = q*(n-1)``, returns
    ``s[floor(h)] + frac(h) * (s[floor(h)+1] - s[floor(h)])``.
    """
    xs = np.asarray(xs, dtype=float).reshape(-1)
    if xs.size == 0:
        raise EmptyInput("quantile of an empty sample")
    if not 0.0 <= q <= 1.0:
        raise BadParameter(f"quantile level must lie in [0, 1], got {q}")
    s = np.sort(xs)
    h = q * (s.size - 1)
    lo = math.floor(h)
    hi = min(lo + 1, s.size - 1)
    return float(s[lo] + (h - lo) * (s[hi] - s[lo]))


def extreme_count(n: int, fraction: float) -> int:
    # tolerate products like 0.29 * 100 == 28.999999999999996
    return int(math.floor(fraction * n + 1e-9))


def subset_extremes(dataset: Dataset, dim: str, fraction: float) -> tuple[Dataset, Dataset]:
    """The ``floor(fraction*n)`` records with the lowest and highest ``dim``.

    Ties are broken by record order. Records keep their original relative
    order inside each subset, which is labelled ``"low"`` / ``"high"``.
    """
    col = dataset.column(dim)
    if not 0.0 < fraction < 0.5:
        raise BadParameter(f"fraction must lie in the open interval (0, 0.5), got {fraction}")
    if dataset.n < 2:
        raise DegenerateSubset(f"need at least 2 records, got {dataset.n}")
    m = extreme_count(dataset.n, fraction)
    if m == 0:
        raise DegenerateSubset(f"fraction {fraction} of {dataset.n} records selects nothing")
    order = np.argsort(col, kind="stable")
    low = dataset.take(np.sort(order[:m]))
    high = dataset.take(np.sort(order[-m:]))
    return low.with_group(["low"] * m), high.with_group(["high"] * m)


def standardize(dataset: Dataset, dims: Optional[Sequence[str]] = None) -> Dataset:
    """Z-score the selected columns (population sd); other columns untouched."""
    dims = list(dataset.dim_names if dims is None else dims)
    updates = {}
    for d in dims:
        c = dataset.column(d)
        mu = c.mean()
        sd = math.sqrt(float(np.mean((c - mu) ** 2)))
        if sd == 0.0:
            raise DegenerateVariance(f"column {d!r} is constant")
        updates[d] = (c - mu) / sd
    return dataset.with_columns(updates)


@dataclass(frozen=True, eq=False)
class PcaResult:
    components: np.ndarray  # (k, d), rows orthonormal
    scores: np.ndarray  # (n, k)
    variance_ratios: np.ndarray  # (k,)
    eigenvalues: np.ndarray  # (k,)
    mean: np.ndarray  # (d,)
    dims: tuple

    def to_dataset(self, source: Optional[Dataset] = None, prefix: str = "PC") -> Dataset:
        names = [f"{prefix}{i + 1}" for i in range(self.scores.shape[1])]
        return Dataset(
            names,
            [self.scores[:, i] for i in range(self.scores.shape[1])],
            group=None if source is None else source.group,
            record_ids=None if source is None else source.record_ids,
        )


def pca(dataset: Dataset, dims: Optional[Sequence[str]] = None, k: Optional[int] = None) -> PcaResult:
    """Top-``k`` principal components of the mean-centered columns.

    Uses a symmetric eigendecomposition of the population covariance.
    Each component is signed so its largest-magnitude entry is positive.
    Standardize first if unit-free components are wanted.
    """
    dims = tuple(dataset.dim_names if dims is None else dims)
    x = np.column_stack([dataset.column(d) for d in dims]) if dims else np.empty((dataset.n, 0))
    n, d = x.shape
    k = d if k is None else int(k)
    if not 1 <= k <= d:
        raise BadParameter(f"k must lie in [1, {d}], got {k}")
    if n < d:
        raise BadParameter(f"need at least as many records ({n}) as dimensions ({d})")

    mean = x.mean(axis=0)
    xc = x - mean
    cov = xc.T @ xc / n
    evals, evecs = np.linalg.eigh(cov)
    order = np.argsort(evals, kind="stable")[::-1]
    evals = np.clip(evals[order], 0.0, None)
    evecs = evecs[:, order]
    trace = float(np.trace(cov))
    if trace <= 0.0:
        raise DegenerateVariance("all selected columns are constant")

    comps = evecs[:, :k].T.copy()
    for row in comps:
        if row[np.argmax(np.abs(row))] < 0:
            row *= -1.0
    return PcaResult(
        components=comps,
        scores=xc @ comps.T,
        variance_ratios=evals[:k] / trace,
        eigenvalues=evals[:k],
        mean=mean,
        dims=dims,
    )
