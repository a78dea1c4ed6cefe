"""
Iris on its first three principal components
============================================

Centered PCA on the four Iris measurements, then a polar plot of the
scores colored by species.
"""

import numpy as np

from polarpcp import figure_spec, load_iris, pca, render_p2cp, write_svg

from _out import OUT

iris = load_iris()
res = pca(iris, k=3)
print("variance ratios:", np.round(res.variance_ratios, 4))

scores = res.to_dataset(iris)
pc1 = scores.column("PC1")
for species in ("setosa", "versicolor", "virginica"):
    mask = np.array(scores.group) == species
    print(f"{species:>10}: mean PC1 = {pc1[mask].mean():+.3f}")

spec = figure_spec(scores, ["PC1", "PC2", "PC3"], density_dots=True, title="Iris PCA")
print("wrote", write_svg(render_p2cp(scores, spec), OUT / "iris_pca.svg"))
