"""
A first polar parallel-coordinates plot
=======================================

Three records over three dimensions. Each record becomes a closed loop
that visits every axis once.
"""

from polarpcp import Dataset, figure_spec, render_p2cp, write_svg

from _out import OUT

ds = Dataset(["A", "B", "C"], [[1, 2, 3], [3, 1, 2], [2, 3, 1]], group=["r1", "r2", "r3"])

# axes start at 12 o'clock and are spaced 120 degrees apart
spec = figure_spec(ds, ["A", "B", "C"], title="three records")
for ax in spec.axes:
    print(f"{ax.dim}: angle={ax.angle:g} range=[{ax.vmin:g}, {ax.vmax:g}]")

scene = render_p2cp(ds, spec)
print("edges drawn:", scene.count(role="edge"))
print("wrote", write_svg(scene, OUT / "small_example.svg"))
