import re
import subprocess
import sys

import pytest

from polarpcp.cli import main
from polarpcp.ingest import SOCIOECONOMIC_VARIABLES, data_path, read_dataset
from polarpcp.stats import pearson

from oracles import socioeconomic_pearson_oracle


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_cube_blobs(tmp_path, capsys):
    out = tmp_path / "blobs.csv"
    code, stdout, _ = run(capsys, "gen", "--kind", "cube-blobs", "--n-per", 50, "--sigma", 0.1, "--seed", 7,
                          "--out", out)
    assert code == 0
    ds = read_dataset(out, ["X", "Y", "Z"], group="group")
    assert ds.n == 200 and set(ds.group) == {"0", "1", "2", "3"}
    assert "n=200" in stdout


def test_gen_is_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        assert run(capsys, "gen", "--kind", "heterogeneous", "--n", 1000, "--seed", 3, "--out", p)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    ds = read_dataset(a, ["X", "Y"], group="group")
    assert abs(pearson(ds.column("X"), ds.column("Y"))) <= 0.1


def test_gen_to_stdout(capsys):
    code, out, err = run(capsys, "gen", "--kind", "positive", "--n", 10, "--seed", 1)
    assert code == 0
    assert out.splitlines()[0] == "X,Y" and len(out.splitlines()) == 11
    assert "pearson r" in err


def test_gen_bad_values(capsys):
    assert run(capsys, "gen", "--kind", "trivariate", "--n", 11)[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["gen", "--kind", "nope"])
    assert exc.value.code == 2


def _write(path, text):
    path.write_text(text)
    return path


def test_render_iris_pca_pipeline(tmp_path, capsys):
    scores = tmp_path / "scores.csv"
    code, out, _ = run(capsys, "pca", "builtin:iris", "--group", "species", "--k", 3, "--out", scores)
    assert code == 0 and "PC1=0.9246" in out
    cfg = _write(tmp_path / "pca.ini", "[render]\ninput = scores.csv\ngroup = group\ndims = PC1, PC2, PC3\n"
                                       "output = pca.svg\ntitle = Iris PCA\n")
    assert run(capsys, "render", cfg)[0] == 0
    svg = (tmp_path / "pca.svg").read_text()
    assert svg.count('class="edge"') == 150 * 3
    assert len(set(re.findall(r'class="edge"[^>]*stroke="(#[0-9A-Fa-f]{6})"', svg))) == 3


def test_render_curvature_override(tmp_path, capsys):
    cfg = _write(tmp_path / "c.ini", "[render]\ninput = builtin:iris\n"
                                     "dims = sepal_length, petal_length, petal_width\n")
    run(capsys, "render", cfg, "--output", tmp_path / "curved.svg")
    run(capsys, "render", cfg, "--set", "curvature=0", "--output", tmp_path / "straight.svg")
    curved = (tmp_path / "curved.svg").read_text()
    straight = (tmp_path / "straight.svg").read_text()
    strip = lambda s: re.sub(r' d="[^"]*"', "", s)  # noqa: E731
    assert curved != straight and strip(curved) == strip(straight)


def test_render_panel_config(tmp_path, capsys):
    body = "[render]\nkind = panel\ninput = builtin:iris\ngroup = species\ncols = 2\noutput = panel.svg\n"
    dims = ["sepal_length", "sepal_width", "petal_length", "petal_width"]
    for i, skip in enumerate(dims):
        body += f"\n[subplot {i}]\ndims = {', '.join(d for d in dims if d != skip)}\nsubtitle = without {skip}\n"
    code, out, _ = run(capsys, "render", _write(tmp_path / "p.ini", body))
    assert code == 0
    svg = (tmp_path / "panel.svg").read_text()
    assert svg.count('class="axis"') == 12
    assert svg.count('class="title"') == 4


def test_render_dotdash_config(tmp_path, capsys):
    run(capsys, "gen", "--kind", "negative", "--n", 100, "--seed", 5, "--out", tmp_path / "neg.csv")
    cfg = _write(tmp_path / "d.ini", "[render]\nkind = dotdash\ninput = neg.csv\noutput = dd.svg\n")
    assert run(capsys, "render", cfg)[0] == 0
    svg = (tmp_path / "dd.svg").read_text()
    assert svg.count('class="point"') == 100 and "r = -" in svg


@pytest.mark.parametrize("body", [
    "[render]\ninput = builtin:iris\nbogus = 1\n",
    "[render]\ninput = builtin:iris\ncurvature = lots\n",
    "[render]\ninput = builtin:iris\nclip = 0.9, 0.1\n",
    "[render]\nkind = radar\ninput = builtin:iris\n",
    "[other]\nx = 1\n",
])
def test_render_config_errors_exit_2(tmp_path, capsys, body):
    code, _, err = run(capsys, "render", _write(tmp_path / "bad.ini", body))
    assert code == 2
    assert "config error" in err


def test_render_missing_input_is_runtime_error(tmp_path, capsys):
    cfg = _write(tmp_path / "m.ini", "[render]\ninput = nope.csv\n")
    assert run(capsys, "render", cfg)[0] == 1


def test_stats(capsys):
    code, out, _ = run(capsys, "stats", "builtin:iris")
    assert code == 0
    assert "n=150" in out and "pearson r" in out and "median" in out


def test_stats_socioeconomic_matches_oracle(capsys):
    code, out, _ = run(capsys, "stats", "builtin:socioeconomic")
    assert code == 0
    n, oracle = socioeconomic_pearson_oracle(data_path("socioeconomic.csv"), SOCIOECONOMIC_VARIABLES)
    assert f"n={n} (dropped 2)" in out
    lines = out.splitlines()
    start = lines.index("pearson r") + 2
    for i, line in enumerate(lines[start:start + 3]):
        assert [float(v) for v in line.split()[1:]] == [round(x, 3) for x in oracle[i]]


def test_stats_exact_line_and_two_dims(tmp_path, capsys):
    p = _write(tmp_path / "line.csv", "a,b\n1,3\n2,5\n3,7\n")
    code, out, _ = run(capsys, "stats", p)
    assert code == 0
    assert out.splitlines()[3].split()[1:] == ["1.000", "1.000"]


def test_render_panel_select(tmp_path, capsys):
    body = ("[render]\nkind = panel\ninput = builtin:socioeconomic\ngroup = year\ncols = 3\n"
            "clip = 0.02, 0.98\noutput = se.svg\n")
    for y in (2007, 2012, 2017):
        body += f"\n[subplot {y}]\nselect = {y}\nsubtitle = {y}\n"
    assert run(capsys, "render", _write(tmp_path / "se.ini", body))[0] == 0
    svg = (tmp_path / "se.svg").read_text()
    assert svg.count('class="edge"') == 898 * 3
    bad = body.replace("select = 2017", "select = 1999")
    code, _, err = run(capsys, "render", _write(tmp_path / "bad.ini", bad))
    assert code == 2 and "1999" in err


def test_covid_fixture(tmp_path, capsys):
    code, out, _ = run(capsys, "covid", "--fixture", "--out-dir", tmp_path)
    assert code == 0
    assert len(list(tmp_path.glob("cross_section_*.csv"))) == 6
    svg = (tmp_path / "covid_panel.svg").read_text()
    assert svg.count('class="title"') == 6
    assert svg.count('class="axis"') == 18
    assert "2021-03-01: 49 counties" in out


def test_covid_bad_fraction(tmp_path, capsys):
    code, _, err = run(capsys, "covid", "--fixture", "--fraction", 0.5, "--out-dir", tmp_path)
    assert code == 2 and "fraction" in err


def test_covid_config_file(tmp_path, capsys):
    cfg = _write(tmp_path / "cv.ini", "[covid]\ndates = 2021-05-01\nrows = 1\ncols = 1\nfraction = 0.2\n")
    code, out, _ = run(capsys, "covid", "--fixture", "--config", cfg, "--out-dir", tmp_path / "o")
    assert code == 0 and "2021-05-01: 50 counties" in out
    assert (tmp_path / "o" / "cross_section_2021-05-01.csv").exists()
    bad = _write(tmp_path / "bad.ini", "[covid]\nwhatever = 1\n")
    assert run(capsys, "covid", "--fixture", "--config", bad)[0] == 2


def test_covid_without_sources(capsys):
    assert run(capsys, "covid")[0] == 2


@pytest.mark.parametrize("sub", ["gen", "render", "covid", "pca"])
def test_help_shows_defaults(sub):
    res = subprocess.run([sys.executable, "-m", "polarpcp", sub, "--help"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "default" in res.stdout
