"""Seeded toy datasets: cube-corner blobs and correlation archetypes.

Random numbers come from the PCG64 generator (seeded through numpy's
``SeedSequence``), read as raw 64-bit words. Uniforms take the top 53 bits
of each word; normals use the Box-Muller transform on pairs of uniforms.
Only the raw word stream is taken from numpy, so the output does not
depend on numpy's distribution samplers. This algorithm is part of the
output contract: changing it changes every generated dataset.
"""

from __future__ import annotations

import numpy as np

from .errors import BadParameter
from .model import Dataset

RNG_ALGORITHM = "pcg64-raw/53bit-uniform/box-muller"

DEFAULT_SIGMA = 0.1
DEFAULT_NOISE = 0.05

CUBE_CORNERS = ((0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))

PAIR_KINDS = ("positive", "negative", "none", "heterogeneous")


class Rng:
    def __init__(self, seed: int):
        seed = int(seed)
        if not 0 <= seed < 2**64:
            raise BadParameter(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.seed = seed
        self._bits = np.random.PCG64(seed)

    def uniform(self, n: int) -> np.ndarray:
        """``n`` doubles in [0, 1)."""
        raw = self._bits.random_raw(int(n))
        return (raw >> np.uint64(11)).astype(np.float64) * 2.0**-53

    def normal(self, n: int, sd: float = 1.0) -> np.ndarray:
        n = int(n)
        m = (n + 1) // 2
        u1 = 1.0 - self.uniform(m)  # (0, 1], keeps log finite
        u2 = self.uniform(m)
        rad = np.sqrt(-2.0 * np.log(u1))
        ang = 2.0 * np.pi * u2
        z = np.empty(2 * m)
        z[0::2] = rad * np.cos(ang)
        z[1::2] = rad * np.sin(ang)
        return sd * z[:n]


def _check_count(name, n, minimum):
    if int(n) != n or n < minimum:
        raise BadParameter(f"{name} must be an integer >= {minimum}, got {n}")
    return int(n)


def _check_noise(noise):
    if not noise >= 0:
        raise BadParameter(f"noise must be >= 0, got {noise}")
    return float(noise)


def gen_cube_blobs(n_per_blob: int, sigma: float = DEFAULT_SIGMA, seed: int = 0) -> Dataset:
    """Four isotropic Gaussian blobs at the origin and the three unit vectors.

    Every coordinate-plane projection merges the origin blob with exactly
    one other blob, while all four stay apart in 3D. Groups are "0".."3" in
    corner order; records are stored blob by blob.
    """
    n_per_blob = _check_count("n_per_blob", n_per_blob, 1)
    if not sigma > 0:
        raise BadParameter(f"sigma must be > 0, got {sigma}")
    rng = Rng(seed)
    blocks, group = [], []
    for b, center in enumerate(CUBE_CORNERS):
        noise = rng.normal(3 * n_per_blob, sigma).reshape(n_per_blob, 3)
        blocks.append(np.asarray(center) + noise)
        group += [str(b)] * n_per_blob
    data = np.vstack(blocks)
    return Dataset(["X", "Y", "Z"], [data[:, 0], data[:, 1], data[:, 2]], group=group)


def gen_correlated_pair(n: int, kind: str = "positive", noise: float = DEFAULT_NOISE, seed: int = 0) -> Dataset:
    """Two-column toy data with X ~ U[0, 1] and Y tied to X by ``kind``.

    ``heterogeneous`` puts Y = X + e on the first ``n // 2`` records and
    Y = 1 - X + e on the rest (groups "pos" / "neg"), so each half is
    strongly correlated while the whole is close to uncorrelated.
    """
    n = _check_count("n", n, 4)
    noise = _check_noise(noise)
    if kind not in PAIR_KINDS:
        raise BadParameter(f"kind must be one of {PAIR_KINDS}, got {kind!r}")
    rng = Rng(seed)
    x = rng.uniform(n)
    group = None
    if kind == "none":
        y = rng.uniform(n)
    else:
        eps = rng.normal(n, noise) if noise > 0 else np.zeros(n)
        if kind == "positive":
            y = x + eps
        elif kind == "negative":
            y = 1.0 - x + eps
        else:
            half = n // 2
            y = np.concatenate([x[:half] + eps[:half], 1.0 - x[half:] + eps[half:]])
            group = ["pos"] * half + ["neg"] * (n - half)
    return Dataset(["X", "Y"], [x, y], group=group)


def gen_trivariate_heterogeneous(n: int, noise: float = DEFAULT_NOISE, seed: int = 0) -> Dataset:
    """X ~ U[0, 1], Y = 1 - X + e, and Z split by halves.

    The first half has Z = X + e (group "z=x"), the second Z = 1 - X + e
    (group "z=1-x"). X-Y is negative; X-Z and Y-Z are mixtures of a positive
    and a negative half.
    """
    n = _check_count("n", n, 4)
    if n % 2:
        raise BadParameter(f"n must be even, got {n}")
    noise = _check_noise(noise)
    rng = Rng(seed)
    x = rng.uniform(n)
    if noise > 0:
        ey, ez = rng.normal(n, noise), rng.normal(n, noise)
    else:
        ey = ez = np.zeros(n)
    y = 1.0 - x + ey
    half = n // 2
    z = np.concatenate([x[:half] + ez[:half], 1.0 - x[half:] + ez[half:]])
    return Dataset(["X", "Y", "Z"], [x, y, z], group=["z=x"] * half + ["z=1-x"] * half)
