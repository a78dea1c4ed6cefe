"""Command-line interface: ``polarpcp {gen,render,stats,pca,covid}``.

Exit codes: 0 on success, 2 for usage or configuration errors, 1 for
failures while running.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import logging
import os
import sys
from pathlib import Path

from . import gen, ingest, render, stats
from .errors import PolarPCPError
from .model import DEFAULT_CURVATURE, DEFAULT_R_INNER, DEFAULT_R_OUTER, DEFAULT_START_ANGLE, Dataset, concat, \
    figure_spec, select_dims

log = logging.getLogger("polarpcp")

GEN_KINDS = ("cube-blobs", "positive", "negative", "none", "heterogeneous", "trivariate")


class ConfigError(Exception):
    """Bad config file contents or option values (exit code 2)."""


# -- value parsing -----------------------------------------------------------

def parse_list(s, key="value") -> list:
    return [t.strip() for t in str(s).split(",") if t.strip()]


def parse_bool(s, key="value") -> bool:
    v = str(s).strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {s!r}")


def parse_float(s, key="value") -> float:
    try:
        return float(s)
    except (TypeError, ValueError):
        raise ConfigError(f"{key}: expected a number, got {s!r}") from None


def parse_int(s, key="value") -> int:
    try:
        return int(s)
    except (TypeError, ValueError):
        raise ConfigError(f"{key}: expected an integer, got {s!r}") from None


def parse_clip(s, key="clip"):
    if s is None or str(s).strip().lower() in ("", "none"):
        return None
    parts = parse_list(s)
    if len(parts) != 2:
        raise ConfigError(f"{key}: expected 'lo, hi' quantiles or 'none', got {s!r}")
    lo, hi = (parse_float(p, key) for p in parts)
    if not 0.0 <= lo < hi <= 1.0:
        raise ConfigError(f"{key}: need 0 <= lo < hi <= 1, got {s!r}")
    return lo, hi


def parse_colors(s, key="colors") -> dict:
    out = {}
    for item in parse_list(s):
        label, sep, color = item.partition(":")
        if not sep or not color.strip():
            raise ConfigError(f"{key}: expected 'label:color' items, got {item!r}")
        out[label.strip()] = color.strip()
    return out


def parse_optional_float(s, key):
    if s is None or str(s).strip().lower() in ("", "auto", "none"):
        return None
    return parse_float(s, key)


def parse_pairs(s, key="pairs") -> list:
    out = []
    for item in parse_list(s):
        a, sep, b = item.partition(":")
        if not sep:
            raise ConfigError(f"{key}: expected 'x:y' items, got {item!r}")
        out.append((a.strip(), b.strip()))
    return out


# key -> (default, parser, help)
RENDER_KEYS = {
    "kind": ("p2cp", str, "p2cp, dotdash or panel"),
    "input": (None, str, "CSV path (relative to the config file), builtin:iris or builtin:socioeconomic"),
    "group": ("", str, "column holding group labels (colors)"),
    "ids": ("", str, "column holding record ids"),
    "dims": ("", parse_list, "comma-separated dimensions; default all numeric columns"),
    "output": ("figure.svg", str, "SVG path (relative to the config file)"),
    "curvature": (DEFAULT_CURVATURE, parse_float, "edge curvature in [0, 1]; 0 draws straight edges"),
    "clip": (None, parse_clip, "axis range quantiles 'lo, hi', or none"),
    "opacity": (None, parse_optional_float, "edge opacity in (0, 1]; auto picks from record count"),
    "density_dots": (False, parse_bool, "draw one dot per record on each axis"),
    "title": ("", str, "figure title"),
    "colors": ({}, parse_colors, "group colors as 'label:#rrggbb, ...'"),
    "start_angle": (DEFAULT_START_ANGLE, parse_float, "angle of the first axis, degrees"),
    "r_inner": (DEFAULT_R_INNER, parse_float, "inner radius of every axis"),
    "r_outer": (DEFAULT_R_OUTER, parse_float, "outer radius of every axis"),
    "rows": (0, parse_int, "panel rows (0: as needed)"),
    "cols": (2, parse_int, "panel columns"),
    "share_ranges": (False, parse_bool, "panel axes share one value range per dimension"),
    "pairs": ([], parse_pairs, "dotdash dimension pairs 'x:y, ...'; default first two dims"),
    "annotate": (True, parse_bool, "dotdash: put Pearson r in the title"),
    "px_per_unit": (200.0, parse_float, "SVG pixels per plot unit"),
}

SUBPLOT_KEYS = {
    "dims": ("", parse_list, "dimensions of this subplot"),
    "subtitle": ("", str, "subplot title"),
    "input": (None, str, "CSV for this subplot; default the [render] input"),
    "clip": (None, parse_clip, "overrides the [render] clip"),
    "select": ("", str, "keep only records whose group label equals this value"),
}

COVID_KEYS = {
    "vaccinations": (None, str, "CDC county vaccinations CSV (path or URL)"),
    "cases": (None, str, "JHU confirmed-cases time series CSV (path or URL)"),
    "deaths": (None, str, "JHU deaths time series CSV (path or URL)"),
    "population": (None, str, "JHU UID/FIPS lookup table CSV (path or URL)"),
    "dates": (
        ["2021-03-01", "2021-04-01", "2021-05-01", "2021-06-01", "2021-07-01", "2021-08-01"],
        parse_list,
        "comma-separated dates",
    ),
    "fraction": (0.1, parse_float, "share of counties kept at each vaccination extreme, in (0, 0.5)"),
    "out_dir": ("covid_out", str, "output directory"),
    "clip": ((0.02, 0.98), parse_clip, "axis range quantiles 'lo, hi', or none"),
    "curvature": (DEFAULT_CURVATURE, parse_float, "edge curvature in [0, 1]"),
    "rows": (3, parse_int, "panel rows"),
    "cols": (2, parse_int, "panel columns"),
    "share_ranges": (True, parse_bool, "panels share axis ranges"),
    "density_dots": (False, parse_bool, "draw per-record axis dots"),
    "cache_dir": (None, str, "download cache directory"),
}


def _parse_section(section: dict, spec: dict, where: str) -> dict:
    out = {k: v[0] for k, v in spec.items()}
    for key, raw in section.items():
        if key not in spec:
            raise ConfigError(f"[{where}] unknown key {key!r}; allowed: {', '.join(spec)}")
        parser = spec[key][1]
        out[key] = raw if parser is str else parser(raw, key)
    return out


def _apply_overrides(section: dict, overrides) -> dict:
    section = dict(section)
    for item in overrides or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        section[key.strip()] = value.strip()
    return section


def read_config(path) -> configparser.ConfigParser:
    cp = configparser.ConfigParser(interpolation=None, default_section="__defaults__")
    try:
        with open(path) as f:
            cp.read_file(f)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from None
    return cp


def _keys_epilog(title, spec) -> str:
    lines = [f"{title} (key = value):"]
    for k, (default, _, text) in spec.items():
        lines.append(f"  {k:<13} {text} [default: {default!r}]")
    return "\n".join(lines)


# -- helpers -----------------------------------------------------------------

def _resolve(base: Path, p: str) -> Path:
    q = Path(p)
    return q if q.is_absolute() else Path(os.path.normpath(base / q))


def load_input(spec: str, base: Path, dims=None, group=None, ids=None) -> Dataset:
    builtin = {"builtin:iris": ingest.load_iris, "builtin:socioeconomic": ingest.load_socioeconomic}
    if spec in builtin:
        ds = builtin[spec]()
        return select_dims(ds, dims) if dims else ds
    path = _resolve(base, spec)
    return ingest.read_dataset(path, dims or None, group=group or None, ids=ids or None)


def write_dataset_csv(ds: Dataset, path_or_file):
    def emit(f):
        w = csv.writer(f, lineterminator="\n")
        header = list(ds.dim_names) + (["group"] if ds.group is not None else [])
        w.writerow(header)
        for i in range(ds.n):
            row = [repr(float(v)) for v in ds.values[i]]
            if ds.group is not None:
                row.append(ds.group[i])
            w.writerow(row)

    if hasattr(path_or_file, "write"):
        emit(path_or_file)
    else:
        with open(path_or_file, "w", newline="") as f:
            emit(f)


def pearson_report(ds: Dataset, dims) -> str:
    m = stats.pearson_matrix(ds, dims)
    width = max(8, *(len(d) for d in dims)) + 2
    lines = ["pearson r", " " * width + "".join(f"{d:>{width}}" for d in dims)]
    for i, d in enumerate(dims):
        lines.append(f"{d:<{width}}" + "".join(f"{m[i, j]:>{width}.3f}" for j in range(len(dims))))
    return "\n".join(lines)


def summary_report(ds: Dataset, dims) -> str:
    qs = (0.02, 0.25, 0.5, 0.75, 0.98)
    width = max(10, *(len(d) for d in dims)) + 2
    head = ["min", "q02", "q25", "median", "q75", "q98", "max"]
    lines = [f"{'dimension':<{width}}" + "".join(f"{h:>12}" for h in head)]
    for d in dims:
        c = ds.column(d)
        vals = [c.min()] + [stats.quantile(c, q) for q in qs] + [c.max()]
        lines.append(f"{d:<{width}}" + "".join(f"{v:>12.6g}" for v in vals))
    return "\n".join(lines)


# -- commands ----------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.kind == "cube-blobs":
        ds = gen.gen_cube_blobs(args.n_per, args.sigma, args.seed)
    elif args.kind == "trivariate":
        ds = gen.gen_trivariate_heterogeneous(args.n, args.noise, args.seed)
    else:
        ds = gen.gen_correlated_pair(args.n, args.kind, args.noise, args.seed)

    to_stdout = args.out == "-"
    if to_stdout:
        write_dataset_csv(ds, sys.stdout)
    else:
        write_dataset_csv(ds, args.out)
    report = sys.stderr if to_stdout else sys.stdout
    print(f"kind={args.kind} n={ds.n} dims={','.join(ds.dim_names)} seed={args.seed}", file=report)
    print(pearson_report(ds, list(ds.dim_names)), file=report)
    return 0


def _figure_from(ds: Dataset, dims, cfg: dict, clip=None, title=None):
    return figure_spec(
        ds, dims,
        r_inner=cfg["r_inner"], r_outer=cfg["r_outer"], start_angle=cfg["start_angle"],
        clip=cfg["clip"] if clip is None else clip,
        curvature=cfg["curvature"], edge_opacity=cfg["opacity"], group_colors=cfg["colors"],
        density_dots=cfg["density_dots"], title=cfg["title"] if title is None else title,
    )


def build_render_scene(cp: configparser.ConfigParser, base: Path, overrides=None) -> tuple:
    if not cp.has_section("render"):
        raise ConfigError("config has no [render] section")
    raw = _apply_overrides(dict(cp.items("render")), overrides)
    cfg = _parse_section(raw, RENDER_KEYS, "render")
    extra = [s for s in cp.sections() if s != "render" and not s.startswith("subplot")]
    if extra:
        raise ConfigError(f"unknown section(s) {extra}; allowed: [render], [subplot NAME]")
    kind = cfg["kind"]
    if kind not in ("p2cp", "dotdash", "panel"):
        raise ConfigError(f"[render] kind must be p2cp, dotdash or panel, got {kind!r}")
    if not cfg["input"]:
        raise ConfigError("[render] input is required")

    if kind == "panel":
        subplots = [s for s in cp.sections() if s.startswith("subplot")]
        if not subplots:
            raise ConfigError("panel config needs at least one [subplot NAME] section")
        figures = []
        for name in subplots:
            sub = _parse_section(dict(cp.items(name)), SUBPLOT_KEYS, name)
            ds = load_input(sub["input"] or cfg["input"], base, None, cfg["group"], cfg["ids"])
            if sub["select"]:
                if ds.group is None:
                    raise ConfigError(f"[{name}] select needs group labels; set [render] group")
                keep = [i for i, g in enumerate(ds.group) if g == sub["select"]]
                if not keep:
                    raise ConfigError(f"[{name}] select = {sub['select']!r} matches no records")
                ds = ds.take(keep)
            dims = sub["dims"] or cfg["dims"] or list(ds.dim_names)
            clip = sub["clip"] if sub["clip"] is not None else cfg["clip"]
            figures.append((ds, _figure_from(ds, dims, cfg, clip=clip, title=""), sub["subtitle"]))
        cols = cfg["cols"]
        rows = cfg["rows"] or -(-len(figures) // cols)
        scene = render.render_panel(figures, rows, cols, share_ranges=cfg["share_ranges"], title=cfg["title"])
    else:
        ds = load_input(cfg["input"], base, cfg["dims"] or None, cfg["group"], cfg["ids"])
        dims = cfg["dims"] or list(ds.dim_names)
        if kind == "p2cp":
            scene = render.render_p2cp(ds, _figure_from(ds, dims, cfg))
        else:
            pairs = cfg["pairs"] or [(dims[0], dims[1])]
            style = render.DotDashStyle(group_colors=cfg["colors"], annotate=cfg["annotate"], title=cfg["title"])
            scene = render.render_dotdash_row(ds, pairs, style)
    return scene, _resolve(base, cfg["output"]), cfg["px_per_unit"]


def cmd_render(args) -> int:
    cp = read_config(args.config)
    base = Path(args.config).resolve().parent
    overrides = list(args.set or [])
    if args.output:
        overrides.append(f"output={Path(args.output).resolve()}")
    scene, out, px = build_render_scene(cp, base, overrides)
    render.write_svg(scene, out, px)
    print(f"wrote {out} ({len(scene.primitives)} primitives)")
    return 0


def cmd_stats(args) -> int:
    ds = load_input(args.input, Path.cwd(), parse_list(args.dims) if args.dims else None, args.group, None)
    dims = list(ds.dim_names)
    print(f"n={ds.n} (dropped {ds.dropped})")
    if len(dims) >= 2:
        print(pearson_report(ds, dims))
    print(summary_report(ds, dims))
    return 0


def cmd_pca(args) -> int:
    ds = load_input(args.input, Path.cwd(), parse_list(args.dims) if args.dims else None, args.group, None)
    if args.standardize:
        ds = stats.standardize(ds)
    res = stats.pca(ds, k=args.k)
    scores = res.to_dataset(ds)
    if args.out:
        write_dataset_csv(scores, args.out)
    print(f"n={ds.n} dims={','.join(ds.dim_names)} standardized={args.standardize}")
    print("variance ratios: " + "  ".join(f"PC{i + 1}={r:.4f}" for i, r in enumerate(res.variance_ratios)))
    return 0


def fixture_sources() -> dict:
    d = ingest.data_path("covid")
    return {
        "vaccinations": str(d / "cdc_vaccinations.csv"),
        "cases": str(d / "jhu_confirmed_US.csv"),
        "deaths": str(d / "jhu_deaths_US.csv"),
        "population": str(d / "jhu_uid_fips_lookup.csv"),
    }


def run_covid(cfg: dict) -> dict:
    """Covid pipeline: panel, extreme deciles per date, CSV snapshots and a panel SVG."""
    fraction = cfg["fraction"]
    if not 0.0 < fraction < 0.5:
        raise ConfigError(f"fraction must lie in the open interval (0, 0.5), got {fraction}")
    missing = [k for k in ("vaccinations", "cases", "deaths", "population") if not cfg[k]]
    if missing:
        raise ConfigError(f"missing source(s): {', '.join(missing)} (or pass --fixture)")
    dates = [ingest.iso_date(d) for d in cfg["dates"]]
    cols, rows = cfg["cols"], cfg["rows"]
    if len(dates) > rows * cols:
        raise ConfigError(f"{len(dates)} dates do not fit a {rows}x{cols} panel")

    paths = {k: ingest.resolve_source(cfg[k], cfg["cache_dir"]) for k in ("vaccinations", "cases", "deaths",
                                                                           "population")}
    vacc = ingest.filter_contiguous(ingest.load_cdc_vaccinations(paths["vaccinations"]))
    cases = ingest.filter_contiguous(ingest.load_jhu_timeseries(paths["cases"]))
    deaths = ingest.filter_contiguous(ingest.load_jhu_timeseries(paths["deaths"]))
    pop = ingest.filter_contiguous(ingest.load_jhu_population(paths["population"]))
    panel = ingest.build_county_panel(vacc, cases, deaths, pop, dates)

    out_dir = Path(cfg["out_dir"])
    out_dir.mkdir(parents=True, exist_ok=True)
    figures, snapshots = [], []
    for date in dates:
        snapshots.append(ingest.write_cross_section(panel, date, out_dir / f"cross_section_{date}.csv"))
        section = panel.cross_section(date)
        low, high = stats.subset_extremes(section, "vaccination_percent", fraction)
        subset = concat([low, high])
        spec = figure_spec(subset, list(ingest.PANEL_VARIABLES), clip=cfg["clip"], curvature=cfg["curvature"],
                           density_dots=cfg["density_dots"])
        figures.append((subset, spec, date))
        log.info("%s: %d counties, %d per extreme", date, section.n, low.n)
    scene = render.render_panel(figures, rows, cols, share_ranges=cfg["share_ranges"])
    svg = render.write_svg(scene, out_dir / "covid_panel.svg")
    return {"panel": panel, "figures": figures, "svg": svg, "snapshots": snapshots, "scene": scene}


def cmd_covid(args) -> int:
    raw: dict = {}
    if args.config:
        cp = read_config(args.config)
        if not cp.has_section("covid"):
            raise ConfigError("config has no [covid] section")
        extra = [s for s in cp.sections() if s != "covid"]
        if extra:
            raise ConfigError(f"unknown section(s) {extra}; allowed: [covid]")
        raw.update(cp.items("covid"))
    if args.fixture:
        raw.update(fixture_sources())
    for key in ("vaccinations", "cases", "deaths", "population", "dates", "fraction", "out_dir", "clip",
                "cache_dir"):
        v = getattr(args, key)
        if v is not None:
            raw[key] = str(v)
    raw = _apply_overrides(raw, args.set)
    cfg = _parse_section(raw, COVID_KEYS, "covid")
    result = run_covid(cfg)
    for date in result["panel"].dates:
        print(f"{date}: {len(result['panel'].observations[date])} counties")
    print(f"wrote {result['svg']} and {len(result['snapshots'])} cross-section CSVs")
    return 0


# -- parser ------------------------------------------------------------------

class _Formatter(argparse.ArgumentDefaultsHelpFormatter, argparse.RawDescriptionHelpFormatter):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polarpcp", description="Polar parallel coordinates plots in hive-plot style.",
                                formatter_class=_Formatter)
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a seeded toy dataset as CSV", formatter_class=_Formatter)
    g.add_argument("--kind", required=True, choices=GEN_KINDS, help="dataset kind")
    g.add_argument("--n", type=int, default=1000, help="records (pair and trivariate kinds)")
    g.add_argument("--n-per", type=int, default=50, help="records per blob (cube-blobs)")
    g.add_argument("--sigma", type=float, default=gen.DEFAULT_SIGMA, help="blob standard deviation")
    g.add_argument("--noise", type=float, default=gen.DEFAULT_NOISE, help="noise standard deviation")
    g.add_argument("--seed", type=int, default=0, help="unsigned 64-bit seed")
    g.add_argument("--out", default="-", help="output CSV, '-' for stdout")
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("render", help="render figures described by a config file", formatter_class=_Formatter,
                       epilog=_keys_epilog("[render] keys", RENDER_KEYS) + "\n\n"
                       + _keys_epilog("[subplot NAME] keys (panel only)", SUBPLOT_KEYS))
    r.add_argument("config", help="config file")
    r.add_argument("--output", default=None, help="override the output path")
    r.add_argument("--set", action="append", metavar="KEY=VALUE", default=None,
                   help="override a [render] key; repeatable")
    r.set_defaults(func=cmd_render)

    s = sub.add_parser("stats", help="pairwise Pearson r and quantile summary", formatter_class=_Formatter)
    s.add_argument("input", help="CSV path, builtin:iris or builtin:socioeconomic")
    s.add_argument("--dims", default=None, help="comma-separated dimensions; default all")
    s.add_argument("--group", default=None, help="label column to exclude from the numeric dims")
    s.set_defaults(func=cmd_stats)

    c = sub.add_parser("pca", help="principal component scores and variance ratios", formatter_class=_Formatter)
    c.add_argument("input", help="CSV path, builtin:iris or builtin:socioeconomic")
    c.add_argument("--dims", default=None, help="comma-separated dimensions; default all")
    c.add_argument("--group", default=None, help="label column carried into the output")
    c.add_argument("--k", type=int, default=3, help="number of components")
    c.add_argument("--standardize", action="store_true", help="z-score columns before PCA")
    c.add_argument("--out", default=None, help="scores CSV (PC1..PCk plus group)")
    c.set_defaults(func=cmd_pca)

    v = sub.add_parser("covid", help="county Covid-19 extremes panel", formatter_class=_Formatter,
                       epilog=_keys_epilog("[covid] keys", COVID_KEYS)
                       + f"\n\nDownloads are cached under ${ingest.CACHE_ENV_VAR} when set.")
    v.add_argument("--config", default=None, help="config file with a [covid] section")
    v.add_argument("--fixture", action="store_true", help="use the bundled offline fixture sources")
    v.add_argument("--vaccinations", default=None, help="CDC vaccinations CSV path or URL")
    v.add_argument("--cases", default=None, help="JHU cases CSV path or URL")
    v.add_argument("--deaths", default=None, help="JHU deaths CSV path or URL")
    v.add_argument("--population", default=None, help="JHU lookup table CSV path or URL")
    v.add_argument("--dates", default=None, help="comma-separated dates")
    v.add_argument("--fraction", type=float, default=None, help="extreme share per side, in (0, 0.5)")
    v.add_argument("--clip", default=None, help="axis quantiles 'lo,hi' or none")
    v.add_argument("--out-dir", dest="out_dir", default=None, help="output directory")
    v.add_argument("--cache-dir", dest="cache_dir", default=None, help="download cache directory")
    v.add_argument("--set", action="append", metavar="KEY=VALUE", default=None, help="override a [covid] key")
    v.set_defaults(func=cmd_covid)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"polarpcp {args.command}: config error: {exc}", file=sys.stderr)
        return 2
    except PolarPCPError as exc:
        print(f"polarpcp {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
