"""
Socioeconomic panel from a config file
======================================

The same figure can be produced from the shell with

    polarpcp render demos/configs/socioeconomic_panel.ini

Here the command line is driven from Python, then the per-year Pearson
correlations are printed for the three variable pairs.
"""

from pathlib import Path

from polarpcp import cli, load_socioeconomic, pearson

config = Path(__file__).resolve().parent / "configs" / "socioeconomic_panel.ini"
cli.main(["render", str(config)])

ds = load_socioeconomic()
print(f"{ds.n} county-years ({ds.dropped} rows dropped for missing values)")
pairs = [("unemployment_rate", "poverty_percent"), ("poverty_percent", "median_household_income"),
         ("unemployment_rate", "median_household_income")]
for year in ("2007", "2012", "2017"):
    sub = ds.take([i for i, g in enumerate(ds.group) if g == year])
    rs = "  ".join(f"r({a[:4]}, {b[:4]})={pearson(sub.column(a), sub.column(b)):+.2f}" for a, b in pairs)
    print(year, rs)
