"""
Clusters hidden from every 2D view
==================================

Four Gaussian blobs sit on corners of the unit cube chosen so that each
coordinate plane overlays two of them. A three-axis polar plot shows all
four at once.
"""

import itertools

import numpy as np

from polarpcp import CUBE_CORNERS, figure_spec, gen_cube_blobs, render_dotdash_row, render_p2cp, write_svg

from _out import OUT

ds = gen_cube_blobs(50, sigma=0.1, seed=7)

for plane in itertools.combinations(range(3), 2):
    proj = [tuple(c[i] for i in plane) for c in CUBE_CORNERS]
    same = [(i, j) for i, j in itertools.combinations(range(4), 2) if proj[i] == proj[j]]
    print(f"plane {plane}: blobs {same} coincide")

# the scatterplots each merge two clusters
write_svg(render_dotdash_row(ds, [("X", "Y"), ("X", "Z"), ("Y", "Z")]), OUT / "cube_blobs_pairs.svg")

# the polar plot separates all four
scene = render_p2cp(ds, figure_spec(ds, ["X", "Y", "Z"], density_dots=True))
print("wrote", write_svg(scene, OUT / "cube_blobs.svg"))
np.set_printoptions(precision=3, suppress=True)
print("blob means:\n", np.array([ds.values[np.array(ds.group) == str(b)].mean(axis=0) for b in range(4)]))
