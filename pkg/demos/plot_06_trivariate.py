"""
A third variable explains the split
===================================

Z follows X in one half of the data and 1 - X in the other. Neither pair
involving Z shows much overall correlation, yet the loops separate.
"""

from polarpcp import figure_spec, gen_trivariate_heterogeneous, pearson, render_p2cp, write_svg

from _out import OUT

ds = gen_trivariate_heterogeneous(400, seed=5)
for a, b in (("X", "Y"), ("X", "Z"), ("Y", "Z")):
    print(f"r({a}, {b}) = {pearson(ds.column(a), ds.column(b)):+.3f}")

spec = figure_spec(ds, ["X", "Y", "Z"])
print("wrote", write_svg(render_p2cp(ds, spec), OUT / "trivariate.svg"))
