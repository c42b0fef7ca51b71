import json
import math
import re

import pytest

from lapcert import io
from lapcert.cli import main
from lapcert.complex import vietoris_rips
from lapcert.harness import (
    CANONICAL_SEED,
    PENTAGON_POINTS,
    PENTAGON_SCALE,
    ExperimentConfig,
    run_rips_insertion_experiment,
    sample_points,
)


@pytest.fixture
def pentagon_filtration(tmp_path):
    f = vietoris_rips(PENTAGON_POINTS, PENTAGON_SCALE, 1)
    path = tmp_path / "pentagon.csv"
    io.write_filtration(f, path)
    return path


def test_rips_two_points(tmp_path):
    pts = tmp_path / "p.csv"
    pts.write_text("0.0,0.0\n0.7,0.0\n")
    out = tmp_path / "f.csv"
    assert main(["rips", "--points", str(pts), "--max-radius", "1.0", "--max-dim", "1", "--out", str(out)]) == 0
    assert out.read_text().splitlines() == ["value,dim,vertices", "0.0,0,0", "0.0,0,1", "0.7,1,0-1"]


def test_rips_twenty_points(tmp_path):
    pts = tmp_path / "p.csv"
    io.write_points(sample_points(CANONICAL_SEED, 20), pts)
    out = tmp_path / "f.csv"
    assert main(["rips", "--points", str(pts), "--max-radius", "1.5", "--out", str(out)]) == 0
    assert len(io.read_filtration(out).simplices(2)) >= 50


def test_rips_empty_file(tmp_path, capsys):
    pts = tmp_path / "p.csv"
    pts.write_text("")
    assert main(["rips", "--points", str(pts), "--max-radius", "1", "--out", str(tmp_path / "f.csv")]) == 2


def test_rips_malformed_line_number(tmp_path, capsys):
    pts = tmp_path / "p.csv"
    pts.write_text("0,0\n1,x\n")
    assert main(["rips", "--points", str(pts), "--max-radius", "1", "--out", str(tmp_path / "f.csv")]) == 2
    assert ":2:" in capsys.readouterr().err


def test_unknown_flag_rejected(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["sharpness", "--bogus"])
    assert exc.value.code == 2


def test_certify_pentagon(pentagon_filtration, tmp_path, capsys):
    out = tmp_path / "cert.csv"
    code = main(["certify", "--filtration", str(pentagon_filtration), "-k", "1",
                 "--simplex", "0-1-2", "--out", str(out)])
    assert code == 0
    _, row = out.read_text().splitlines()
    fields = row.split(",")
    assert float(fields[6]) == pytest.approx(math.sqrt(3) / 2, abs=1e-9)


def test_certify_strict_names_two_sided(pentagon_filtration, tmp_path, capsys):
    out = tmp_path / "cert.csv"
    code = main(["certify", "--filtration", str(pentagon_filtration), "--simplex", "0-1-2",
                 "--strict", "--out", str(out)])
    assert code == 1
    assert out.exists()
    assert "two-sided estimate (trailing clause)" in capsys.readouterr().err


def test_certify_missing_face(pentagon_filtration):
    assert main(["certify", "--filtration", str(pentagon_filtration), "--simplex", "0-1-3"]) == 2


def test_experiment_default(tmp_path):
    out = tmp_path / "exp"
    assert main(["experiment", "--out-dir", str(out)]) == 0
    scatter = io.read_scatter(out / "scatter.csv")
    assert len(scatter) == 50 * 190
    assert all(y < 2 * x for x, y in scatter)
    assert len((out / "certificates.csv").read_text().splitlines()) == 51
    assert "PASS" in (out / "summary.txt").read_text()


def test_experiment_too_many(tmp_path, capsys):
    assert main(["experiment", "--n-insertions", "5000", "--out-dir", str(tmp_path / "e")]) == 2
    assert "1140" in capsys.readouterr().err


def test_experiment_zero(tmp_path):
    out = tmp_path / "e"
    assert main(["experiment", "--n-insertions", "0", "--out-dir", str(out)]) == 0
    assert io.read_scatter(out / "scatter.csv") == []


def test_experiment_config_precedence(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n_insertions": 3, "seed": 5}))
    out = tmp_path / "e"
    assert main(["experiment", "--config", str(cfg), "--n-insertions", "2", "--out-dir", str(out)]) == 0
    assert len((out / "certificates.csv").read_text().splitlines()) == 3
    cfg.write_text(json.dumps({"bogus": 1}))
    assert main(["experiment", "--config", str(cfg), "--out-dir", str(out)]) == 2


def test_round_trip_filtration(tmp_path):
    pts = tmp_path / "p.csv"
    io.write_points(sample_points(CANONICAL_SEED, 20), pts)
    fcsv = tmp_path / "f.csv"
    assert main(["rips", "--points", str(pts), "--max-radius", "1.5", "--out", str(fcsv)]) == 0
    out = tmp_path / "e"
    assert main(["experiment", "--filtration", str(fcsv), "--n-insertions", "10", "--out-dir", str(out)]) == 0
    in_process = run_rips_insertion_experiment(ExperimentConfig(n_insertions=10))
    assert io.read_scatter(out / "scatter.csv") == in_process.scatter


def test_examples_and_campaign(tmp_path):
    assert main(["sharpness", "--out-dir", str(tmp_path / "s")]) == 0
    assert (tmp_path / "s" / "spectrum_after.csv").read_text().splitlines()[-1].startswith("1,4.0")
    assert main(["pentagon"]) == 0
    assert main(["pentagon", "--strict"]) == 1
    assert main(["campaign", "--trials", "20"]) == 0


def test_tolerance_env(monkeypatch):
    monkeypatch.setenv("LAPCERT_TOL", "nope")
    assert main(["sharpness"]) == 2
    monkeypatch.setenv("LAPCERT_TOL", "1e-10")
    assert main(["sharpness"]) == 0


def test_laplacian_and_insert(pentagon_filtration, tmp_path, capsys):
    grown = tmp_path / "grown.csv"
    assert main(["insert", "--filtration", str(pentagon_filtration), "--simplex", "0-1-2", "--out", str(grown)]) == 0
    capsys.readouterr()
    assert main(["laplacian", "--filtration", str(grown), "-k", "1",
                 "--spectrum-out", str(tmp_path / "s.csv"), "--boundary-out", str(tmp_path / "b.csv")]) == 0
    values = [float(x) for x in capsys.readouterr().out.split()]
    assert values == pytest.approx([0, 0, 0, 0, 3], abs=1e-9)
    assert len((tmp_path / "b.csv").read_text().splitlines()) == 4
    assert main(["insert", "--filtration", str(grown), "--simplex", "0-1-2", "--out", str(grown)]) == 2


def test_plot(tmp_path):
    scatter = tmp_path / "s.csv"
    io.write_scatter([(math.sqrt(3), 1.0), (math.sqrt(3), 3.0)], scatter)
    svg = tmp_path / "f.svg"
    assert main(["plot", "--scatter", str(scatter), "--out", str(svg)]) == 0
    text = svg.read_text()
    assert text.count("<circle") == 2 and "stroke-dasharray" in text
    first = text
    assert main(["plot", "--scatter", str(scatter), "--out", str(svg)]) == 0
    assert svg.read_text() == first


def test_plot_single_and_empty(tmp_path):
    one = tmp_path / "one.csv"
    io.write_scatter([(1.0, 0.5)], one)
    assert main(["plot", "--scatter", str(one), "--out", str(tmp_path / "a.svg")]) == 0
    empty = tmp_path / "empty.csv"
    io.write_scatter([], empty)
    assert main(["plot", "--scatter", str(empty), "--out", str(tmp_path / "b.svg")]) == 0
    text = (tmp_path / "b.svg").read_text()
    assert "<circle" not in text and 'class="bound"' in text


def test_plot_malformed(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("spike_norm,delta,bound\n1.0,abc,2\n")
    assert main(["plot", "--scatter", str(bad), "--out", str(tmp_path / "x.svg")]) == 2


def test_plot_points_below_bound_line(tmp_path):
    out = tmp_path / "e"
    assert main(["experiment", "--n-insertions", "5", "--out-dir", str(out)]) == 0
    svg = tmp_path / "f.svg"
    assert main(["plot", "--scatter", str(out / "scatter.csv"), "--out", str(svg)]) == 0
    text = svg.read_text()
    x1, y1, x2, y2 = map(float, re.search(
        r'class="bound" x1="([\d.]+)" y1="([\d.]+)" x2="([\d.]+)" y2="([\d.]+)"', text).groups())
    circles = [tuple(map(float, m)) for m in re.findall(r'cx="([\d.]+)" cy="([\d.]+)"', text)]
    assert len(circles) == 5 * 190
    for cx, cy in circles:
        line_y = y1 + (y2 - y1) * (cx - x1) / (x2 - x1)
        assert cy > line_y  # SVG y grows downwards
