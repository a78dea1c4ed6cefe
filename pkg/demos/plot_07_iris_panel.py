"""
Small multiples over dimension triples
======================================

Each cell drops one of the four Iris measurements.
"""

from polarpcp import figure_spec, load_iris, render_panel, write_svg

from _out import OUT

iris = load_iris()
dims = list(iris.dim_names)
figures = []
for skip in dims:
    keep = [d for d in dims if d != skip]
    figures.append((iris, figure_spec(iris, keep), f"without {skip}"))

# shared ranges give every sepal_length axis the same scale
scene = render_panel(figures, 2, 2, share_ranges=True, title="Iris")
print("wrote", write_svg(scene, OUT / "iris_panel.svg"))
