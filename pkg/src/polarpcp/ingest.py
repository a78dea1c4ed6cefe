"""CSV ingestion, cached downloads and county-level joins.

County tables are keyed by 5-digit FIPS code. The three published layouts
understood here are

* CDC county vaccinations (long format): one row per ``Date`` (MM/DD/YYYY)
  and ``FIPS``, with ``Series_Complete_Pop_Pct`` among the value columns;
* JHU CSSE US time series (wide format): a ``FIPS`` column followed by one
  cumulative-count column per day, headed M/D/YY;
* the JHU ``UID_ISO_FIPS_LookUp_Table``: ``FIPS`` and ``Population``.
"""

from __future__ import annotations

import csv
import datetime as dt
import hashlib
import json
import logging
import math
import os
import tempfile
import time
import urllib.error
import urllib.request
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from .errors import BadPopulation, FetchError, IoError, MissingDate, SchemaError
from .model import Dataset

log = logging.getLogger(__name__)

CACHE_ENV_VAR = "POLARPCP_CACHE_DIR"

CDC_VACCINATIONS_URL = "https://data.cdc.gov/api/views/8xkx-amqh/rows.csv?accessType=DOWNLOAD"
JHU_BASE = "https://raw.githubusercontent.com/CSSEGISandData/COVID-19/master/csse_covid_19_data/"
JHU_CASES_URL = JHU_BASE + "csse_covid_19_time_series/time_series_covid19_confirmed_US.csv"
JHU_DEATHS_URL = JHU_BASE + "csse_covid_19_time_series/time_series_covid19_deaths_US.csv"
JHU_LOOKUP_URL = JHU_BASE + "UID_ISO_FIPS_LookUp_Table.csv"

PANEL_VARIABLES = ("vaccination_percent", "cases_per_100k", "deaths_per_100k")


@dataclass(frozen=True, eq=False)
class SourceTable:
    """County rows keyed by FIPS code, plus where they came from.

    ``dropped`` counts input rows that did not make it into ``rows``.
    """

    rows: Mapping[str, Mapping[str, object]]
    columns: Sequence[str]
    source_url: str = ""
    fetched_at: str = ""
    dropped: int = 0

    def __post_init__(self):
        for fips in self.rows:
            if not (isinstance(fips, str) and len(fips) == 5 and fips.isdigit()):
                raise SchemaError(f"bad FIPS key {fips!r}")
        object.__setattr__(self, "columns", tuple(self.columns))

    @property
    def fips(self) -> set:
        return set(self.rows)

    def __len__(self):
        return len(self.rows)

    def __eq__(self, other):
        if not isinstance(other, SourceTable):
            return NotImplemented
        return self.columns == other.columns and dict(self.rows) == dict(other.rows)

    def __repr__(self):
        return f"SourceTable({len(self.rows)} counties, {len(self.columns)} columns, dropped={self.dropped})"


def normalize_fips(raw) -> Optional[str]:
    """'1001', '1001.0' or '01001' -> '01001'; None when not a FIPS code."""
    s = str(raw).strip()
    if s.endswith(".0"):
        s = s[:-2]
    if not s.isdigit() or len(s) > 5:
        return None
    return s.zfill(5)


def iso_date(value) -> str:
    """Normalize a date, ISO string, MM/DD/YYYY or M/D/YY header to YYYY-MM-DD."""
    if isinstance(value, dt.datetime):
        return value.date().isoformat()
    if isinstance(value, dt.date):
        return value.isoformat()
    s = str(value).strip()
    for fmt in ("%Y-%m-%d", "%m/%d/%Y", "%m/%d/%y"):
        try:
            return dt.datetime.strptime(s, fmt).date().isoformat()
        except ValueError:
            continue
    raise ValueError(f"unrecognized date {value!r}")


def _coerce(value: str, kind):
    if value is None:
        raise ValueError("missing")
    value = value.strip()
    if value == "":
        raise ValueError("missing")
    if kind in (float, "float"):
        x = float(value)
        if not math.isfinite(x):
            raise ValueError("non-finite")
        return x
    if kind in (int, "int"):
        return int(float(value))
    return value


def _open_csv(path):
    try:
        f = open(path, newline="", encoding="utf-8-sig")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    return f


def _read_records(path, schema: Mapping[str, object]):
    """Yield coerced dicts for rows that satisfy ``schema``; return drop count."""
    with _open_csv(path) as f:
        reader = csv.DictReader(f)
        header = reader.fieldnames
        if header is None:
            raise SchemaError(f"{path}: no header row")
        missing = [c for c in schema if c not in header]
        if missing:
            raise SchemaError(f"{path}: missing required column(s) {missing}")
        records, dropped = [], 0
        for row in reader:
            try:
                records.append({c: _coerce(row[c], kind) for c, kind in schema.items()})
            except (ValueError, TypeError):
                dropped += 1
    return records, dropped


def read_csv(path, schema: Mapping[str, object], *, key: Optional[str] = None, group: Optional[str] = None,
             ids: Optional[str] = None):
    """Read a headed CSV, coercing the ``schema`` columns (name -> float/str).

    With ``key`` set, returns a SourceTable keyed by the FIPS code in that
    column. Otherwise returns a Dataset whose dimensions are the float-typed
    schema columns, with ``group``/``ids`` naming label columns. Rows with a
    missing field or an unparseable number are dropped and counted in the
    result's ``dropped``.
    """
    schema = dict(schema)
    for extra in (key, group, ids):
        if extra is not None:
            schema.setdefault(extra, str)
    records, dropped = _read_records(path, schema)

    if key is not None:
        rows = {}
        for rec in records:
            fips = normalize_fips(rec.pop(key))
            if fips is None or fips in rows:
                dropped += 1
                continue
            rows[fips] = rec
        cols = [c for c in schema if c != key]
        return SourceTable(rows, cols, source_url=str(path), dropped=dropped)

    dims = [c for c, kind in schema.items() if kind in (float, "float") and c not in (group, ids)]
    return Dataset(
        dims,
        [[r[d] for r in records] for d in dims],
        group=None if group is None else [r[group] for r in records],
        record_ids=None if ids is None else [r[ids] for r in records],
        dropped=dropped,
    )


def read_header(path) -> list:
    with _open_csv(path) as f:
        header = next(csv.reader(f), None)
    if header is None:
        raise SchemaError(f"{path}: no header row")
    return header


def read_dataset(path, dims: Optional[Sequence[str]] = None, group: Optional[str] = None,
                 ids: Optional[str] = None) -> Dataset:
    """Dataset from a CSV; ``dims`` defaults to every non-label column."""
    if dims is None:
        dims = [c for c in read_header(path) if c not in (group, ids)]
    return read_csv(path, {d: float for d in dims}, group=group, ids=ids)


def data_path(name: str) -> Path:
    return Path(__file__).parent / "data" / name


def load_iris() -> Dataset:
    """The 150-record Iris data bundled with the package, grouped by species."""
    dims = ["sepal_length", "sepal_width", "petal_length", "petal_width"]
    return read_dataset(data_path("iris.csv"), dims, group="species")


SOCIOECONOMIC_VARIABLES = ("unemployment_rate", "poverty_percent", "median_household_income")


def load_socioeconomic(path=None) -> Dataset:
    """Tidy county socioeconomic rows grouped by year, with FIPS record ids.

    Defaults to the small synthetic sample bundled with the package; pass a
    CSV with the same columns to use real data.
    """
    return read_dataset(path or data_path("socioeconomic.csv"), SOCIOECONOMIC_VARIABLES, group="year", ids="fips")


# -- downloads ---------------------------------------------------------------

def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "polarpcp"


def cache_paths(url: str, cache_dir) -> tuple[Path, Path]:
    h = hashlib.sha256(url.encode("utf-8")).hexdigest()
    base = Path(cache_dir)
    return base / f"{h}.csv", base / f"{h}.meta"


def _atomic_write(path: Path, data: bytes):
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _download(url: str, timeout: float) -> bytes:
    req = urllib.request.Request(url, headers={"User-Agent": "polarpcp"})
    with urllib.request.urlopen(req, timeout=timeout) as resp:
        return resp.read()


def fetch_source(url: str, cache_dir=None, max_age: Optional[float] = None, timeout: float = 60.0) -> Path:
    """Local path of the CSV behind ``url``, downloading it if not cached.

    Files live at ``<cache_dir>/<sha256(url)>.csv`` next to a JSON ``.meta``
    sidecar holding the url, fetch time and content hash. A cached copy is
    used when present and, if ``max_age`` (seconds) is given, young enough.
    """
    cache_dir = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    data_file, meta_file = cache_paths(url, cache_dir)
    if data_file.exists() and meta_file.exists():
        meta = json.loads(meta_file.read_text())
        if max_age is None or time.time() - meta.get("fetched_at_epoch", 0) <= max_age:
            return data_file

    try:
        payload = _download(url, timeout)
    except (urllib.error.URLError, OSError, ValueError) as exc:
        raise FetchError(
            f"could not download {url}: {exc}. To work offline, download the file by other means and "
            f"pass its local path instead of the URL, or place it at {data_file} with a matching "
            f"{meta_file.name} sidecar."
        ) from exc

    try:
        cache_dir.mkdir(parents=True, exist_ok=True)
        _atomic_write(data_file, payload)
        now = time.time()
        meta = {
            "url": url,
            "fetched_at": dt.datetime.fromtimestamp(now, dt.timezone.utc).isoformat(timespec="seconds"),
            "fetched_at_epoch": now,
            "sha256": hashlib.sha256(payload).hexdigest(),
        }
        _atomic_write(meta_file, (json.dumps(meta, indent=2, sort_keys=True) + "\n").encode())
    except OSError as exc:
        raise IoError(f"cannot write cache in {cache_dir}: {exc}") from exc
    log.info("fetched %s -> %s (%d bytes)", url, data_file, len(payload))
    return data_file


def fetch_sources(urls: Iterable[str], cache_dir=None, max_age=None) -> list[Path]:
    urls = list(urls)
    with ThreadPoolExecutor(max_workers=max(1, min(4, len(urls)))) as pool:
        return list(pool.map(lambda u: fetch_source(u, cache_dir, max_age), urls))


def resolve_source(path_or_url, cache_dir=None) -> Path:
    s = str(path_or_url)
    if s.startswith(("http://", "https://")):
        return fetch_source(s, cache_dir)
    p = Path(s)
    if not p.exists():
        raise IoError(f"no such file: {p}")
    return p


def _cached_url(path: Path) -> tuple[str, str]:
    meta = Path(path).with_suffix(".meta")
    if meta.exists():
        try:
            m = json.loads(meta.read_text())
            return m.get("url", str(path)), m.get("fetched_at", "")
        except (ValueError, OSError):
            pass
    return str(path), ""


# -- published layouts -------------------------------------------------------

def load_cdc_vaccinations(path, value_column: str = "Series_Complete_Pop_Pct") -> SourceTable:
    """Pivot the long CDC county file into one column per ISO date.

    Zero or missing percentages mean the county did not report and are
    dropped, as are non-county FIPS entries such as ``UNK``.
    """
    records, dropped = _read_records(path, {"Date": str, "FIPS": str, value_column: str})
    rows: dict = {}
    dates = set()
    for rec in records:
        fips = normalize_fips(rec["FIPS"])
        try:
            pct = float(rec[value_column])
            date = iso_date(rec["Date"])
        except ValueError:
            dropped += 1
            continue
        if fips is None or not math.isfinite(pct) or pct <= 0.0 or pct > 100.0:
            dropped += 1
            continue
        row = rows.setdefault(fips, {})
        if date in row:
            dropped += 1
            continue
        row[date] = pct
        dates.add(date)
    url, fetched = _cached_url(path)
    return SourceTable(rows, sorted(dates), source_url=url, fetched_at=fetched, dropped=dropped)


def load_jhu_timeseries(path) -> SourceTable:
    """Wide JHU cumulative counts; columns become ISO dates."""
    header = read_header(path)
    if "FIPS" not in header:
        raise SchemaError(f"{path}: missing required column(s) ['FIPS']")
    date_cols = {}
    for c in header:
        try:
            date_cols[c] = iso_date(c)
        except ValueError:
            continue
    rows: dict = {}
    dropped = 0
    with _open_csv(path) as f:
        for rec in csv.DictReader(f):
            fips = normalize_fips(rec["FIPS"] or "")
            if fips is None or fips in rows:
                dropped += 1
                continue
            row = {}
            for c, iso in date_cols.items():
                try:
                    row[iso] = _coerce(rec[c], float)
                except (ValueError, TypeError):
                    row[iso] = None
            rows[fips] = row
    url, fetched = _cached_url(path)
    return SourceTable(rows, list(date_cols.values()), source_url=url, fetched_at=fetched, dropped=dropped)


def load_jhu_population(path) -> SourceTable:
    """County populations from the JHU UID/FIPS lookup table."""
    table = read_csv(path, {"Population": float}, key="FIPS")
    rows = {f: {"population": r["Population"]} for f, r in table.rows.items()}
    url, fetched = _cached_url(path)
    return SourceTable(rows, ["population"], source_url=url, fetched_at=fetched, dropped=table.dropped)


# -- joins and rates ---------------------------------------------------------

def join_fips(tables: Sequence[SourceTable], required: Optional[Sequence[str]] = None,
              rename: Optional[Sequence[Optional[Mapping[str, str]]]] = None) -> SourceTable:
    """Inner join on FIPS.

    Column names must not collide across tables; pass ``rename`` (one
    old->new mapping per table, or None) to disambiguate. Counties absent
    from any table, or missing a value in a ``required`` column, are dropped
    and counted.
    """
    if not tables:
        raise SchemaError("nothing to join")
    rename = list(rename) if rename is not None else [None] * len(tables)
    if len(rename) != len(tables):
        raise SchemaError(f"{len(rename)} rename maps for {len(tables)} tables")

    renamed_cols = []
    seen: dict = {}
    for i, (t, mapping) in enumerate(zip(tables, rename)):
        mapping = mapping or {}
        cols = [mapping.get(c, c) for c in t.columns]
        for c in cols:
            if c in seen:
                raise SchemaError(f"column {c!r} appears in tables {seen[c]} and {i}; rename one of them")
            seen[c] = i
        renamed_cols.append(cols)

    required = list(required or [])
    absent = [c for c in required if c not in seen]
    if absent:
        raise SchemaError(f"required column(s) {absent} not present in any table")

    union = set().union(*(t.rows for t in tables))
    common = set(tables[0].rows).intersection(*(t.rows for t in tables[1:]))
    rows = {}
    dropped = len(union) - len(common)
    for fips in sorted(common):
        merged = {}
        for t, cols in zip(tables, renamed_cols):
            src = t.rows[fips]
            for old, new in zip(t.columns, cols):
                merged[new] = src.get(old)
        if any(merged.get(c) is None for c in required):
            dropped += 1
            continue
        rows[fips] = merged
    columns = [c for cols in renamed_cols for c in cols]
    return SourceTable(rows, columns, source_url=" + ".join(t.source_url for t in tables), dropped=dropped)


def per_capita(count: float, population: float, per: float = 100_000) -> float:
    if not population > 0:
        raise BadPopulation(f"population must be positive, got {population}")
    return count / population * per


def is_contiguous_fips(fips: str) -> bool:
    state = int(fips[:2])
    return 1 <= state <= 56 and state not in (2, 15)


def filter_contiguous(table: SourceTable) -> SourceTable:
    """Drop Alaska (02), Hawaii (15) and territories/other codes (outside 01-56)."""
    rows = {f: r for f, r in table.rows.items() if is_contiguous_fips(f)}
    return SourceTable(rows, table.columns, source_url=table.source_url, fetched_at=table.fetched_at,
                       dropped=table.dropped + len(table.rows) - len(rows))


# -- county panel ------------------------------------------------------------

@dataclass(frozen=True)
class CountyObservation:
    fips: str
    date: str
    vaccination_percent: float
    cases_per_100k: float
    deaths_per_100k: float
    population: float


@dataclass(frozen=True)
class CountyPanel:
    """Per-date cross-sections of county vaccination, case and death rates."""

    dates: tuple
    observations: Mapping[str, tuple]
    dropped: Mapping[str, int] = field(default_factory=dict)

    def cross_section(self, date) -> Dataset:
        date = iso_date(date)
        if date not in self.observations:
            raise MissingDate(f"date {date} is not in this panel")
        obs = self.observations[date]
        return Dataset(
            list(PANEL_VARIABLES),
            [[getattr(o, v) for o in obs] for v in PANEL_VARIABLES],
            record_ids=[o.fips for o in obs],
        )


def build_county_panel(vacc: SourceTable, cases: SourceTable, deaths: SourceTable, population: SourceTable,
                       dates: Sequence, population_column: str = "population") -> CountyPanel:
    """Join the four county tables into one cross-section per date.

    Case and death counts are cumulative to each date; rates are per
    100,000 residents. A county missing any value on a date, or with a
    negative count, is left out of that date only.
    """
    dates = tuple(iso_date(d) for d in dates)
    for name, table in (("vaccinations", vacc), ("cases", cases), ("deaths", deaths)):
        absent = [d for d in dates if d not in table.columns]
        if absent:
            raise MissingDate(f"{name} source ({table.source_url or 'table'}) has no data for {', '.join(absent)}")
    if population_column not in population.columns:
        raise SchemaError(f"population table lacks column {population_column!r}")

    common = sorted(vacc.fips & cases.fips & deaths.fips & population.fips)
    observations, dropped = {}, {}
    for date in dates:
        obs = []
        for fips in common:
            pct = vacc.rows[fips].get(date)
            c = cases.rows[fips].get(date)
            d = deaths.rows[fips].get(date)
            pop = population.rows[fips].get(population_column)
            if None in (pct, c, d, pop) or pop <= 0 or c < 0 or d < 0 or not 0 <= pct <= 100:
                continue
            obs.append(CountyObservation(fips, date, float(pct), per_capita(c, pop), per_capita(d, pop), float(pop)))
        observations[date] = tuple(obs)
        dropped[date] = len(common) - len(obs)
    return CountyPanel(dates, observations, dropped)


def write_cross_section(panel: CountyPanel, date, path) -> Path:
    """CSV snapshot with columns fips, date and the three rates."""
    date = iso_date(date)
    if date not in panel.observations:
        raise MissingDate(f"date {date} is not in this panel")
    path = Path(path)
    try:
        with open(path, "w", newline="") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(["fips", "date", *PANEL_VARIABLES])
            for o in panel.observations[date]:
                w.writerow([o.fips, o.date, repr(o.vaccination_percent), repr(o.cases_per_100k),
                            repr(o.deaths_per_100k)])
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
    return path


def month_starts(start, end) -> list[str]:
    """First-of-month ISO dates from ``start`` through ``end`` inclusive."""
    s = dt.date.fromisoformat(iso_date(start))
    e = dt.date.fromisoformat(iso_date(end))
    out = []
    y, m = s.year, s.month
    if s.day != 1:
        m += 1
    while True:
        if m > 12:
            y, m = y + 1, 1
        d = dt.date(y, m, 1)
        if d > e:
            return out
        out.append(d.isoformat())
        m += 1
