"""Regenerate the offline county fixtures in src/polarpcp/data/covid/.

The values are synthetic (seeded) but every file follows the column layout
of the public source it stands in for, including the awkward rows real
files contain: non-contiguous states, unassigned/out-of-state JHU rows,
CDC ``UNK`` rows, Texas counties reporting 0 %, and counties present in
only one source. Run from the repository root:

    python tools/make_covid_fixture.py
"""

import csv
import datetime as dt
from pathlib import Path

import numpy as np

from polarpcp.gen import Rng

OUT = Path(__file__).resolve().parents[1] / "src" / "polarpcp" / "data" / "covid"

STATES = {"01": "Alabama", "02": "Alaska", "06": "California", "13": "Georgia", "15": "Hawaii",
          "17": "Illinois", "21": "Kentucky", "37": "North Carolina", "39": "Ohio", "47": "Tennessee",
          "48": "Texas", "51": "Virginia", "53": "Washington", "55": "Wisconsin", "72": "Puerto Rico"}
ABBR = {"01": "AL", "02": "AK", "06": "CA", "13": "GA", "15": "HI", "17": "IL", "21": "KY", "37": "NC",
        "39": "OH", "47": "TN", "48": "TX", "51": "VA", "53": "WA", "55": "WI", "72": "PR"}

# 50 contiguous counties present in every source
SHARED = (
    [f"01{c:03d}" for c in (1, 3, 5, 7, 9, 11)]
    + [f"06{c:03d}" for c in (1, 37, 59, 73)]
    + [f"13{c:03d}" for c in (1, 3, 5, 7, 9, 11)]
    + [f"17{c:03d}" for c in (1, 3, 5, 31)]
    + [f"21{c:03d}" for c in (1, 3, 5, 7)]
    + [f"37{c:03d}" for c in (1, 3, 5, 7, 9, 11, 63, 119)]
    + [f"39{c:03d}" for c in (1, 3, 5, 49)]
    + [f"47{c:03d}" for c in (1, 3, 5, 7, 37, 157)]
    + [f"55{c:03d}" for c in (1, 3, 5, 7, 25, 79)]
    + ["06075", "13121"]
)
NON_CONTIGUOUS = ["02013", "02020", "15001", "15003", "72001"]
TEXAS = ["48001", "48113", "48201"]  # report 0 % to CDC
CDC_ONLY = ["51001", "51003"]
JHU_ONLY = ["53001", "53003"]
MISSING_MARCH = "37119"  # no CDC row on 2021-03-01

CDC_DATES = [dt.date(2021, 2, 15)] + [dt.date(2021, m, d) for m in range(3, 9) for d in (1, 15)]
JHU_DATES = CDC_DATES


def county_name(fips):
    return f"County {fips[2:]}"


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    rng = Rng(20210801)
    all_fips = sorted(set(SHARED + NON_CONTIGUOUS + TEXAS + CDC_ONLY + JHU_ONLY))
    k = len(all_fips)
    pop = np.round(np.exp(np.log(5_000) + rng.uniform(k) * (np.log(1_200_000) - np.log(5_000)))).astype(int)
    vacc_final = 25 + 45 * rng.uniform(k)  # % fully vaccinated on 2021-08-15
    case_base = 5_000 + 7_000 * rng.uniform(k)  # per 100k by 2021-02-15
    # less-vaccinated counties keep accumulating cases faster
    case_growth = (400 + 1_400 * rng.uniform(k)) * (1.6 - vacc_final / 70)
    cfr = 0.008 + 0.017 * rng.uniform(k)
    info = {f: dict(pop=int(pop[i]), vf=vacc_final[i], cb=case_base[i], cg=case_growth[i], cfr=cfr[i])
            for i, f in enumerate(all_fips)}

    def months_from_feb15(d):
        return (d - dt.date(2021, 2, 15)).days / 30.4

    def vacc_pct(f, d):
        if f in TEXAS:
            return 0.0
        share = min(1.0, max(0.0, (d - dt.date(2020, 12, 20)).days / 238))
        return round(info[f]["vf"] * share ** 0.8, 1)

    def cum_cases(f, d):
        per100k = info[f]["cb"] + info[f]["cg"] * months_from_feb15(d)
        return int(round(per100k * info[f]["pop"] / 100_000))

    def cum_deaths(f, d):
        return int(round(cum_cases(f, d) * info[f]["cfr"]))

    # CDC: long format, newest dates first like the published file
    cdc_fips = [f for f in all_fips if f not in JHU_ONLY]
    with open(OUT / "cdc_vaccinations.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["Date", "FIPS", "MMWR_week", "Recip_County", "Recip_State", "Series_Complete_Pop_Pct",
                    "Series_Complete_Yes", "Completeness_pct"])
        for d in sorted(CDC_DATES, reverse=True):
            week = d.isocalendar()[1]
            for f in cdc_fips:
                if f == MISSING_MARCH and d == dt.date(2021, 3, 1):
                    continue
                pct = vacc_pct(f, d)
                w.writerow([d.strftime("%m/%d/%Y"), f, week, county_name(f), ABBR[f[:2]], pct,
                            int(pct / 100 * info[f]["pop"]), 0 if f in TEXAS else 95.1])
            w.writerow([d.strftime("%m/%d/%Y"), "UNK", week, "Unknown County", "NC", 0, 1234, 0])

    jhu_fips = [f for f in all_fips if f not in CDC_ONLY]
    date_headers = [f"{d.month}/{d.day}/{d.strftime('%y')}" for d in JHU_DATES]

    def jhu_prefix(f, uid):
        st = f[:2]
        return [uid, "US", "USA", 840, f"{int(f)}.0", county_name(f), STATES[st], "US",
                "35.0", "-80.0", f"{county_name(f)}, {STATES[st]}, US"]

    for name, fn, with_pop in (("jhu_confirmed_US.csv", cum_cases, False), ("jhu_deaths_US.csv", cum_deaths, True)):
        with open(OUT / name, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            head = ["UID", "iso2", "iso3", "code3", "FIPS", "Admin2", "Province_State", "Country_Region",
                    "Lat", "Long_", "Combined_Key"]
            w.writerow(head + (["Population"] if with_pop else []) + date_headers)
            for f in jhu_fips:
                row = jhu_prefix(f, 84000000 + int(f))
                w.writerow(row + ([info[f]["pop"]] if with_pop else []) + [fn(f, d) for d in JHU_DATES])
            # rows the real file carries that are not counties
            w.writerow([84080037, "US", "USA", 840, "80037.0", "Out of NC", "North Carolina", "US", "", "",
                        "Out of NC, North Carolina, US"] + ([0] if with_pop else []) + [3] * len(JHU_DATES))
            w.writerow([84090037, "US", "USA", 840, "90037.0", "Unassigned", "North Carolina", "US", "", "",
                        "Unassigned, North Carolina, US"] + ([0] if with_pop else []) + [7] * len(JHU_DATES))
            w.writerow([84088888, "US", "USA", 840, "", "", "Diamond Princess", "US", "", "",
                        "Diamond Princess, US"] + ([0] if with_pop else []) + [49] * len(JHU_DATES))

    with open(OUT / "jhu_uid_fips_lookup.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["UID", "iso2", "iso3", "code3", "FIPS", "Admin2", "Province_State", "Country_Region",
                    "Lat", "Long_", "Combined_Key", "Population"])
        w.writerow([4, "AF", "AFG", 4, "", "", "", "Afghanistan", "33.9", "67.7", "Afghanistan", 38928341])
        for st in sorted({f[:2] for f in jhu_fips}):
            w.writerow([84000000 + int(st), "US", "USA", 840, f"{int(st)}.0", "", STATES[st], "US", "", "",
                        f"{STATES[st]}, US", 1_000_000])
        for f in jhu_fips:
            w.writerow(jhu_prefix(f, 84000000 + int(f)) + [info[f]["pop"]])
        w.writerow([84090037, "US", "USA", 840, "90037.0", "Unassigned", "North Carolina", "US", "", "",
                    "Unassigned, North Carolina, US", ""])
    print(f"wrote fixtures to {OUT}")


if __name__ == "__main__":
    main()
