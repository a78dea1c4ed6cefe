import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polarpcp import errors
from polarpcp.geom import (
    CubicCurve,
    Point2,
    angular_difference,
    axis_position,
    edge_curve,
    record_loop,
    sample_curve,
    sample_curve_array,
)
from polarpcp.model import AxisSpec

from oracles import de_casteljau

AX = AxisSpec("a", 90, 1, 5, 0, 10)


@pytest.mark.parametrize("v, expected", [(0, (0, 1)), (10, (0, 5)), (5, (0, 3))])
def test_axis_position_examples(v, expected):
    p = axis_position(AX, v)
    assert p.x == pytest.approx(expected[0], abs=1e-15)
    assert p.y == pytest.approx(expected[1], abs=1e-15)


def test_sample_curve_matches_de_casteljau_oracle():
    c = CubicCurve(Point2(0, 0), Point2(0, 1), Point2(1, 1), Point2(1, 0))
    assert sample_curve(c, 0.5) == pytest.approx((0.5, 0.75))
    assert de_casteljau(c, 0.5) == pytest.approx((0.5, 0.75))
    assert sample_curve(c, 0) == c.p0
    assert sample_curve(c, 1) == c.p3
    for t in np.linspace(0, 1, 17):
        assert sample_curve(c, t) == pytest.approx(de_casteljau(c, t), abs=1e-15)
        assert sample_curve_array(c, [t])[0] == pytest.approx(de_casteljau(c, t), abs=1e-15)


@pytest.mark.parametrize("t", [-0.01, 1.01])
def test_sample_curve_rejects_out_of_range(t):
    c = CubicCurve(Point2(0, 0), Point2(0, 1), Point2(1, 1), Point2(1, 0))
    with pytest.raises(errors.BadParameter):
        sample_curve(c, t)


def test_angular_difference_is_antisymmetric_even_when_opposite():
    assert angular_difference(90, 210) == 120
    assert angular_difference(330, 90) == 120
    assert angular_difference(0, 180) == 180
    assert angular_difference(180, 0) == -180


def test_edge_curve_degenerate():
    with pytest.raises(errors.DegenerateEdge):
        edge_curve(AX, 1, AxisSpec("b", 90, 0, 1, 0, 1), 0.5, 0.5)


def _axis_strategy():
    return st.builds(
        lambda ang, ri, span, vmin, vspan: AxisSpec("a", ang, ri, ri + span, vmin, vmin + vspan),
        st.floats(0, 359.9),
        st.floats(0, 2),
        st.floats(0.1, 5),
        st.floats(-100, 100),
        st.floats(0.01, 100),
    )


@settings(max_examples=200)
@given(_axis_strategy(), _axis_strategy(), st.floats(0, 1), st.floats(0, 1), st.floats(0, 1))
def test_edge_curve_properties(a1, a2, f1, f2, k):
    if abs(angular_difference(a1.angle, a2.angle)) < 1.0:
        return
    v1 = a1.vmin + f1 * (a1.vmax - a1.vmin)
    v2 = a2.vmin + f2 * (a2.vmax - a2.vmin)
    c = edge_curve(a1, v1, a2, v2, k)
    back = edge_curve(a2, v2, a1, v1, k)
    assert c.p0 == axis_position(a1, v1)
    assert c.p3 == axis_position(a2, v2)
    for t in np.linspace(0, 1, 11):
        p, q = sample_curve(c, t), sample_curve(back, 1 - t)
        assert math.hypot(p.x - q.x, p.y - q.y) < 1e-9

    # every sampled point stays in the wedge between the two axes
    d = angular_difference(a1.angle, a2.angle)
    for p in sample_curve_array(c, np.linspace(0, 1, 33)):
        if math.hypot(*p) < 1e-9:
            continue
        off = angular_difference(a1.angle, math.degrees(math.atan2(p[1], p[0])))
        if d > 0:
            assert -1e-9 <= off <= d + 1e-9 or (d == 180 and abs(off + 180) < 1e-9)
        else:
            assert d - 1e-9 <= off <= 1e-9 or (d == -180 and abs(off - 180) < 1e-9)


@settings(max_examples=100)
@given(_axis_strategy(), _axis_strategy(), st.floats(0, 1), st.floats(0, 1))
def test_straight_edges_at_zero_curvature(a1, a2, f1, f2):
    if a1.angle == a2.angle:
        return
    c = edge_curve(a1, a1.vmin + f1 * (a1.vmax - a1.vmin), a2, a2.vmin + f2 * (a2.vmax - a2.vmin), 0.0)
    assert c.c1 == c.p0 and c.c2 == c.p3
    dx, dy = c.p3.x - c.p0.x, c.p3.y - c.p0.y
    norm = math.hypot(dx, dy)
    for t in np.linspace(0, 1, 21):
        p = sample_curve(c, t)
        cross = (p.x - c.p0.x) * dy - (p.y - c.p0.y) * dx
        assert abs(cross) / max(norm, 1e-300) < 1e-12


def _axes(m):
    return [AxisSpec(f"d{i}", 90 + i * 360 / m, 0.2, 1.0, 0.0, 1.0) for i in range(m)]


def test_record_loop_sizes_and_closure():
    assert len(record_loop([0.1, 0.5, 0.9], _axes(3), 0.5)) == 3
    assert len(record_loop([0.1, 0.5], _axes(2), 0.5)) == 1
    edges = record_loop([0.1, 0.5, 0.9, 0.3, 0.7], _axes(5), 0.5)
    assert len(edges) == 5
    axes = _axes(5)
    for i, e in enumerate(edges):
        assert e.p0 == axis_position(axes[i], [0.1, 0.5, 0.9, 0.3, 0.7][i])
        assert e.p3 == axis_position(axes[(i + 1) % 5], [0.1, 0.5, 0.9, 0.3, 0.7][(i + 1) % 5])
        assert e.p3 == edges[(i + 1) % 5].p0


def test_three_axis_loop_covers_every_pair():
    axes = _axes(3)
    edges = record_loop([0.2, 0.4, 0.6], axes, 0.5)
    angle = {round(a.angle, 9): a.dim for a in axes}

    def dim_at(p):
        return angle[round(math.degrees(math.atan2(p.y, p.x)) % 360, 9)]

    pairs = {frozenset((dim_at(e.p0), dim_at(e.p3))) for e in edges}
    assert pairs == {frozenset(p) for p in (("d0", "d1"), ("d1", "d2"), ("d0", "d2"))}


def test_record_loop_clamps_and_checks_shape():
    axes = _axes(3)
    assert record_loop([5.0, -1.0, 0.5], axes, 0.5)[0].p0 == axis_position(axes[0], 1.0)
    with pytest.raises(errors.ShapeMismatch):
        record_loop([0.1, 0.2], axes, 0.5)
