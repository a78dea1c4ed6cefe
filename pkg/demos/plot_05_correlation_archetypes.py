"""
What correlation looks like
===========================

Positive relationships draw concentric arcs, negative ones cross in a
butterfly. A heterogeneous pair has near-zero overall r while each half
is strongly correlated. Dot-dash scatterplots are shown for comparison.
"""

from polarpcp import figure_spec, gen_correlated_pair, pearson, render_dotdash, render_panel, write_svg

from _out import OUT

kinds = ("positive", "negative", "none", "heterogeneous")
figures = []
for i, kind in enumerate(kinds):
    ds = gen_correlated_pair(200, kind, seed=10 + i)
    print(f"{kind:>13}: r = {pearson(*ds.columns):+.3f}")
    figures.append((ds, figure_spec(ds, ["X", "Y"]), kind))
    write_svg(render_dotdash(ds, "X", "Y"), OUT / f"dotdash_{kind}.svg")

print("wrote", write_svg(render_panel(figures, 2, 2), OUT / "correlation_archetypes.svg"))
