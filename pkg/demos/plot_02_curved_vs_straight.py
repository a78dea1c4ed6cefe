"""
Curved versus straight edges
============================

Curvature 0 draws chords between axes. The default 0.5 bends each edge
along the circle, which keeps loops from collapsing through the centre.
"""

from dataclasses import replace

from polarpcp import figure_spec, gen_correlated_pair, render_panel, write_svg

from _out import OUT

ds = gen_correlated_pair(60, "positive", seed=3)
spec = figure_spec(ds, ["X", "Y"])

figures = [(ds, replace(spec, curvature=k), f"curvature {k}") for k in (0.0, 0.5)]
print("wrote", write_svg(render_panel(figures, 1, 2), OUT / "curved_vs_straight.svg"))
