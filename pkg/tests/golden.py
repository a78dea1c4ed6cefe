"""Pinned render fixtures whose SVG hashes the acceptance suite checks.

Run ``python3 tests/golden.py`` to print the current hashes after an
intentional rendering change.
"""

import hashlib
import tempfile
from dataclasses import replace

from polarpcp import cli
from polarpcp.gen import gen_correlated_pair
from polarpcp.ingest import load_iris
from polarpcp.model import Dataset, figure_spec
from polarpcp.render import render_p2cp, render_panel, scene_to_svg
from polarpcp.stats import pca

IRIS_DIMS = ["sepal_length", "sepal_width", "petal_length", "petal_width"]


def toy_svg() -> bytes:
    ds = Dataset(["A", "B", "C"], [[1, 2, 3], [3, 1, 2], [2, 3, 1]], group=["r1", "r2", "r3"])
    return scene_to_svg(render_p2cp(ds, figure_spec(ds, ["A", "B", "C"], title="toy"))).encode()


def straight_curved_svgs() -> tuple:
    ds = gen_correlated_pair(30, "negative", seed=1)
    spec = figure_spec(ds, ["X", "Y"])
    return tuple(scene_to_svg(render_p2cp(ds, replace(spec, curvature=k))).encode() for k in (0.0, 0.5))


def iris_pca_svg() -> bytes:
    iris = load_iris()
    scores = pca(iris, k=3).to_dataset(iris)
    spec = figure_spec(scores, ["PC1", "PC2", "PC3"], density_dots=True, title="Iris PCA")
    return scene_to_svg(render_p2cp(scores, spec)).encode()


def iris_panel_svg() -> bytes:
    iris = load_iris()
    figs = []
    for skip in IRIS_DIMS:
        dims = [d for d in IRIS_DIMS if d != skip]
        figs.append((iris, figure_spec(iris, dims), f"without {skip}"))
    return scene_to_svg(render_panel(figs, 2, 2, title="Iris")).encode()


def covid_single_date_svg() -> bytes:
    cfg = {k: v[0] for k, v in cli.COVID_KEYS.items()}
    cfg.update(cli.fixture_sources())
    cfg.update(dates=["2021-05-01"], rows=1, cols=1)
    with tempfile.TemporaryDirectory() as d:
        cfg["out_dir"] = d
        return cli.run_covid(cfg)["svg"].read_bytes()


def golden_svgs() -> dict:
    straight, curved = straight_curved_svgs()
    return {
        "toy_3x3": toy_svg(),
        "pair_straight": straight,
        "pair_curved": curved,
        "iris_pca": iris_pca_svg(),
        "iris_panel_2x2": iris_panel_svg(),
        "covid_2021_05_01": covid_single_date_svg(),
    }


def sha256(b: bytes) -> str:
    return hashlib.sha256(b).hexdigest()


if __name__ == "__main__":
    for name, svg in golden_svgs().items():
        print(f'    "{name}": "{sha256(svg)}",')
