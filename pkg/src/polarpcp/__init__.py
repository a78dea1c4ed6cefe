"""Polar parallel coordinates plots drawn in the hive-plot style.

Records become closed loops of cubic edges across radial axes, one axis per
dimension. The package also carries the statistics, toy-data generators and
county data ingestion used to build such plots, and writes SVG.
"""

from .errors import *  # noqa: F401,F403
from .model import AxisSpec, Dataset, FigureSpec, build_axes, clamp_value, concat, figure_spec, select_dims
from .geom import CubicCurve, Point2, axis_position, edge_curve, record_loop, sample_curve
from .stats import PcaResult, pca, pearson, quantile, standardize, subset_extremes
from .gen import CUBE_CORNERS, gen_correlated_pair, gen_cube_blobs, gen_trivariate_heterogeneous
from .ingest import (
    SourceTable, CountyPanel, build_county_panel, fetch_source, filter_contiguous, join_fips,
    load_iris, load_socioeconomic, per_capita, read_csv, read_dataset,
)
from .render import Scene, render_dotdash, render_dotdash_row, render_p2cp, render_panel, scene_to_svg, write_svg

__version__ = "0.1.0"
