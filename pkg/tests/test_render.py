import re
from dataclasses import replace

import pytest

from polarpcp import errors
from polarpcp.gen import gen_correlated_pair
from polarpcp.geom import edge_curve
from polarpcp.ingest import load_iris
from polarpcp.model import Dataset, concat, figure_spec
from polarpcp.render import (
    BLUE,
    ORANGE,
    Circle,
    CubicPath,
    DotDashStyle,
    Line,
    Scene,
    Text,
    format_value,
    group_color_map,
    loop_count,
    render_dotdash,
    render_p2cp,
    render_panel,
    scene_to_svg,
    write_svg,
)
from polarpcp.stats import subset_extremes

TOY = Dataset(["a", "b", "c"], [[0, 1, 2], [2, 0, 1], [1, 2, 0]], group=["x", "y", "z"])


def test_toy_counts():
    scene = render_p2cp(TOY, figure_spec(TOY, ["a", "b", "c"]))
    assert scene.count(Line, "axis") == 3
    assert scene.count(CubicPath, "edge") == 9 == loop_count(3, 3)
    assert len({p.stroke for p in scene.of_role("edge")}) == 3
    assert scene.count(Circle) == 0


def test_two_axis_plot_has_one_edge_per_record():
    scene = render_p2cp(TOY, figure_spec(TOY, ["a", "b"]))
    assert scene.count(CubicPath, "edge") == 3 == loop_count(3, 2)


def test_empty_dataset_draws_axes_only():
    spec = figure_spec(TOY, ["a", "b", "c"])
    scene = render_p2cp(TOY.take([]), spec)
    assert scene.count(Line, "axis") == 3
    assert scene.count(CubicPath) == 0


def test_paint_order():
    spec = figure_spec(TOY, ["a", "b", "c"], density_dots=True, title="t")
    roles = [p.role for p in render_p2cp(TOY, spec).primitives]
    order = ["axis", "edge", "density-dot"]
    firsts = [roles.index(r) for r in order]
    lasts = [len(roles) - 1 - roles[::-1].index(r) for r in order]
    assert firsts == sorted(firsts) and all(lasts[i] < firsts[i + 1] for i in range(2))
    assert roles[-1] == "title"


def test_density_dots():
    iris = load_iris()
    dims = ["sepal_length", "petal_length", "petal_width"]
    scene = render_p2cp(iris, figure_spec(iris, dims, density_dots=True))
    dots = scene.of_role("density-dot")
    assert len(dots) == 3 * iris.n
    assert {d.fill for d in dots} == {ORANGE}
    assert {d.opacity for d in dots} == {0.2}
    assert render_p2cp(iris, figure_spec(iris, dims)).count(Circle) == 0


def test_edge_opacity_default_depends_on_n():
    iris = load_iris()
    dims = ["sepal_length", "petal_length", "petal_width"]
    assert {p.opacity for p in render_p2cp(iris, figure_spec(iris, dims)).of_role("edge")} == {0.15}
    assert {p.opacity for p in render_p2cp(TOY, figure_spec(TOY, ["a", "b", "c"])).of_role("edge")} == {0.6}
    spec = figure_spec(TOY, ["a", "b", "c"], edge_opacity=0.3)
    assert {p.opacity for p in render_p2cp(TOY, spec).of_role("edge")} == {0.3}


def test_low_high_colors():
    ds = gen_correlated_pair(100, "positive", seed=1)
    both = concat(subset_extremes(ds, "X", 0.1))
    scene = render_p2cp(both, figure_spec(both, ["X", "Y"]))
    assert [p.stroke for p in scene.of_role("edge")] == [BLUE] * 10 + [ORANGE] * 10
    assert group_color_map(["low", "high"]) == {"low": BLUE, "high": ORANGE}
    assert group_color_map(["a", "b"], {"a": "#111111"})["a"] == "#111111"


def test_labels_present():
    spec = figure_spec(TOY, ["a", "b", "c"])
    scene = render_p2cp(TOY, spec)
    assert [t.string for t in scene.of_role("axis-label")] == ["a", "b", "c"]
    assert len(scene.of_role("range-label")) == 6
    assert "0" in {t.string for t in scene.of_role("range-label")}


@pytest.mark.parametrize("v, s", [(0.123456, "0.123"), (1234567.0, "1,234,567"), (-0.0, "0"), (42.0, "42")])
def test_format_value(v, s):
    assert format_value(v) == s


def test_render_rejects_foreign_dims():
    spec = figure_spec(TOY, ["a", "b", "c"])
    with pytest.raises(errors.UnknownDimension):
        render_p2cp(Dataset(["a", "b"], [[1, 2], [3, 4]]), spec)


# -- dot-dash ----------------------------------------------------------------

def test_dotdash_counts_and_annotation():
    ds = Dataset(["x", "y"], [[1, 2, 3, 4, 5], [2, 4, 6, 8, 10]])
    scene = render_dotdash(ds, "x", "y")
    assert scene.count(Circle, "point") == 5
    assert scene.count(Line, "x-dash") == 5
    assert scene.count(Line, "y-dash") == 5
    assert scene.count(Text, "axis-label") == 2
    assert "r = 1.00" in scene.of_role("title")[0].string
    assert not render_dotdash(ds, "x", "y", DotDashStyle(annotate=False)).of_role("title")


def test_dotdash_group_colors():
    ds = gen_correlated_pair(20, "heterogeneous", seed=3)
    scene = render_dotdash(ds, "X", "Y")
    fills = {p.fill for p in scene.of_role("point")}
    assert len(fills) == 2
    assert {p.stroke for p in scene.of_role("x-dash")} == fills


def test_dotdash_constant_column_is_not_fatal():
    ds = Dataset(["x", "y"], [[1, 1, 1], [1, 2, 3]])
    assert "n/a" in render_dotdash(ds, "x", "y").of_role("title")[0].string


# -- panels ------------------------------------------------------------------

def _iris_figures(triples):
    iris = load_iris()
    return [(iris, figure_spec(iris, list(t)), ", ".join(t)) for t in triples]


def test_panel_six_cells():
    figs = _iris_figures([("sepal_length", "sepal_width", "petal_length")] * 6)
    scene = render_panel(figs, 3, 2)
    assert scene.count(Line, "axis") == 18
    assert scene.count(Text, "title") == 6
    centers = sorted({(round(t.anchor.x, 6), round(t.anchor.y, 6)) for t in scene.of_role("title")})
    assert len(centers) == 6
    assert scene.width / scene.height == pytest.approx(2 / 3)


def test_panel_iris_triples_2x2():
    dims = ["sepal_length", "sepal_width", "petal_length", "petal_width"]
    triples = [tuple(d for d in dims if d != skip) for skip in dims]
    scene = render_panel(_iris_figures(triples), 2, 2, title="Iris")
    assert scene.count(CubicPath, "edge") == 4 * 150 * 3
    assert scene.of_role("title")[-1].string == "Iris"


def test_panel_row_major_placement():
    figs = _iris_figures([("sepal_length", "sepal_width", "petal_length")] * 3)
    figs = [(ds, spec, f"s{i}") for i, (ds, spec, _) in enumerate(figs)]
    titles = {t.string: t.anchor for t in render_panel(figs, 2, 2).of_role("title")}
    assert titles["s0"].y == titles["s1"].y > titles["s2"].y
    assert titles["s0"].x == titles["s2"].x < titles["s1"].x


def test_shared_ranges_make_identical_labels():
    ds = gen_correlated_pair(200, "none", seed=2)
    low, high = subset_extremes(ds, "X", 0.1)
    figs = [(low, figure_spec(low, ["X", "Y"]), "low"), (high, figure_spec(high, ["X", "Y"]), "high")]
    shared = render_panel(figs, 1, 2, share_ranges=True)
    labels = [t.string for t in shared.of_role("range-label")]
    assert labels[:4] == labels[4:]
    own = [t.string for t in render_panel(figs, 1, 2).of_role("range-label")]
    assert own[:4] != own[4:]


def test_panel_overflow():
    figs = _iris_figures([("sepal_length", "sepal_width")] * 5)
    with pytest.raises(errors.LayoutError):
        render_panel(figs, 2, 2)
    with pytest.raises(errors.LayoutError):
        render_panel([], 0, 1)


# -- SVG ---------------------------------------------------------------------

def test_empty_scene_svg():
    svg = scene_to_svg(Scene())
    assert svg.count("<svg") == 1 and svg.count("<rect") == 1
    assert len(re.findall(r"<(line|path|circle|text)\b", svg)) == 0


def test_svg_is_byte_identical_across_runs(tmp_path):
    spec = figure_spec(TOY, ["a", "b", "c"], density_dots=True, title="toy")
    a = write_svg(render_p2cp(TOY, spec), tmp_path / "a.svg").read_bytes()
    b = write_svg(render_p2cp(TOY, spec), tmp_path / "b.svg").read_bytes()
    assert a == b
    assert b"-0.000000" not in a
    assert a.count(b'class="edge"') == 9


def test_svg_unwritable_path(tmp_path):
    with pytest.raises(errors.IoError):
        write_svg(Scene(), tmp_path / "no" / "such" / "dir.svg")


def test_straight_and_curved_differ_only_in_path_data():
    base = figure_spec(TOY, ["a", "b", "c"])
    straight = scene_to_svg(render_p2cp(TOY, replace(base, curvature=0.0)))
    curved = scene_to_svg(render_p2cp(TOY, base))
    strip = lambda s: re.sub(r' d="[^"]*"', "", s)  # noqa: E731
    assert straight != curved
    assert strip(straight) == strip(curved)


def test_svg_flips_y_once():
    c = edge_curve(figure_spec(TOY, ["a", "b"]).axes[0], 2, figure_spec(TOY, ["a", "b"]).axes[1], 2, 0.0)
    scene = Scene((CubicPath((c,)),), -1, -1, 2, 2)
    m = re.search(r'd="M (\S+) (\S+)', scene_to_svg(scene))
    # top of the outer ring (0, 1) maps to SVG y = 0
    assert (float(m.group(1)), float(m.group(2))) == pytest.approx((1.0, 0.0))


def test_canvas_grows_to_fit_long_labels():
    short = Dataset(["a", "b", "c"], TOY.columns)
    long = Dataset(["a", "b", "a_rather_long_dimension_name"], TOY.columns)
    s1 = render_p2cp(short, figure_spec(short, list(short.dim_names)))
    s2 = render_p2cp(long, figure_spec(long, list(long.dim_names)))
    assert s2.width > s1.width
    label = s2.of_role("axis-label")[-1]
    assert label.align == "start"
    assert label.anchor.x + 0.55 * label.size * len(label.string) < s2.xmin + s2.width
