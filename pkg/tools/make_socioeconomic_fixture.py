"""Regenerate src/polarpcp/data/socioeconomic.csv.

Synthetic (seeded) county rows for 2007, 2012 and 2017 in a tidy layout:
fips, year, unemployment_rate, poverty_percent, median_household_income.
A shared latent hardship score per county makes unemployment and poverty
move together and income move against both. Two rows have a blank income
so readers exercise their drop counting. Run from the repository root:

    python tools/make_socioeconomic_fixture.py
"""

import csv
from pathlib import Path

import numpy as np

from polarpcp.gen import Rng

OUT = Path(__file__).resolve().parents[1] / "src" / "polarpcp" / "data" / "socioeconomic.csv"

STATES = ("01", "05", "13", "17", "19", "21", "26", "29", "37", "39", "42", "47", "48", "51", "55")
YEARS = {2007: (4.6, 45_000.0), 2012: (8.1, 47_500.0), 2017: (4.4, 52_000.0)}  # mean unemployment, income


def main():
    rng = Rng(20170101)
    fips = [f"{s}{c:03d}" for s in STATES for c in range(1, 41, 2)]
    n = len(fips)
    hardship = rng.normal(n)
    rows = []
    for year, (u_mean, inc_mean) in YEARS.items():
        shock = rng.normal(n)
        unemp = np.clip(u_mean * np.exp(0.25 * hardship + 0.25 * shock), 1.0, 30.0)
        pov = np.clip(15.0 + 5.0 * hardship + 2.0 * rng.normal(n), 2.0, 50.0)
        inc = inc_mean * np.exp(-0.18 * hardship + 0.12 * rng.normal(n) + 0.1 * shock * (year == 2012))
        for i, f in enumerate(fips):
            rows.append([f, year, f"{unemp[i]:.1f}", f"{pov[i]:.1f}", f"{inc[i]:.0f}"])
    rows[7][4] = ""
    rows[n + 11][4] = ""
    with open(OUT, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["fips", "year", "unemployment_rate", "poverty_percent", "median_household_income"])
        w.writerows(rows)
    print(f"wrote {OUT} ({len(rows)} rows)")


if __name__ == "__main__":
    main()
