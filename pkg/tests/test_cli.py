"""Command-line interface: outputs, manifests, determinism and exit codes."""
import csv
import json
import subprocess
import sys

import pytest

from sepscope import cli
from sepscope.errors import NonConvergent


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_chi_value(capsys):
    code, out, _ = run(["chi", "--d", "2", "--eps", "0.5"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "0.3125"
    code, out, _ = run(["chi", "--d", "1", "--eps", "0.5", "--form", "integral"], capsys)
    assert code == 0 and float(out.splitlines()[0]) == pytest.approx(float(cli.chi_value(1, 0.5)[0]), abs=1e-9)


def test_chi_descriptions_have_no_citations():
    for d, form in [(1, "closed"), (1, "integral"), (2, "polynomial"), (4, "hypergeometric")]:
        _, desc = cli.chi_value(d, 0.3, form)
        assert "Eq" not in desc and "(1" not in desc


@pytest.mark.parametrize(
    "argv",
    [
        ["chi", "--d", "1", "--eps", "1.5"],
        ["chi", "--d", "3", "--eps", "0.5", "--form", "closed"],
        ["ppt", "--system", "two-qutrit"],
        ["ppt", "--threads", "0"],
        ["bogus"],
        [],
    ],
)
def test_config_errors_exit_1(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 1
    assert "configuration error" in err


def test_numerical_failure_exit_2(monkeypatch, capsys):
    def boom(*a, **k):
        raise NonConvergent("forced")

    monkeypatch.setattr(cli, "chi_value", boom)
    code, _, err = run(["chi", "--d", "4", "--eps", "0.5"], capsys)
    assert code == 2 and "numerical failure" in err


def test_formulas_table(tmp_path, capsys):
    code, out, _ = run(["formulas", "--all", "--out", str(tmp_path)], capsys)
    assert code == 0
    rows = list(csv.DictReader((tmp_path / "formulas.csv").open()))
    assert [r["target"] for r in rows] == ["29/64", "8/33", "26/323"]
    assert all(float(r["max_rel_dev"]) < 5e-4 for r in rows)


def test_ppt_deterministic_across_threads_and_manifest(tmp_path, capsys):
    base = ["ppt", "--system", "two-rebit", "--samples", "2e4", "--chunk-size", "3000", "--seed", "4"]
    assert run(base + ["--threads", "1", "--out", str(tmp_path / "a")], capsys)[0] == 0
    assert run(base + ["--threads", "4", "--out", str(tmp_path / "b")], capsys)[0] == 0
    a = (tmp_path / "a" / "ppt-two-rebit.csv").read_bytes()
    assert a == (tmp_path / "b" / "ppt-two-rebit.csv").read_bytes()
    manifest = tmp_path / "a" / "ppt-two-rebit.manifest.json"
    data = json.loads(manifest.read_text())
    assert data["seed"] == 4 and data["chunk_size"] == 3000 and data["n_chunks"] == 7
    assert data["counts"]["samples"] == 20_000
    code, _, _ = run(["--manifest", str(manifest), "--out", str(tmp_path / "c")], capsys)
    assert code == 0
    assert (tmp_path / "c" / "ppt-two-rebit.csv").read_bytes() == a


def test_threads_env_does_not_change_counts(tmp_path, monkeypatch, capsys):
    argv = ["ball", "--kind", "2x2", "--half-width", "1", "--samples", "5e4", "--eps-step", "0.1"]
    monkeypatch.setenv("SEPSCOPE_THREADS", "1")
    run(argv + ["--out", str(tmp_path / "a")], capsys)
    monkeypatch.setenv("SEPSCOPE_THREADS", "3")
    run(argv + ["--out", str(tmp_path / "b")], capsys)
    name = "ball-2x2-real.csv"
    assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_ball_csv_svg_and_dump(tmp_path, capsys):
    argv = ["ball", "--kind", "3x3", "--half-width", "1", "--samples", "2e4", "--eps-step", "0.25",
            "--svg", "--dump", "--out", str(tmp_path)]
    code, out, _ = run(argv, capsys)
    assert code == 0
    rows = list(csv.DictReader((tmp_path / "ball-3x3-real.csv").open()))
    assert list(rows[0]) == ["eps", "trials", "hits", "p", "stderr"]
    assert rows[-1]["hits"] == rows[-1]["trials"]
    svg = (tmp_path / "ball-3x3-real-plot.svg").read_text()
    assert (tmp_path / "ball-3x3-real-plot.csv").exists()
    assert svg.startswith("<?xml") and "</svg>" in svg
    surv = list(csv.DictReader((tmp_path / "ball-3x3-real-survivors.csv").open()))
    assert len(surv) == int(rows[0]["trials"])


def test_ball_volume_report(tmp_path, capsys):
    code, out, _ = run(["ball", "--volume", "2", "--samples", "2e5", "--out", str(tmp_path)], capsys)
    assert code == 0
    assert "product formula" in out and "quoted constant" in out and "consistent with" in out


def test_scatter_and_curve_outputs(tmp_path, capsys):
    code, out, _ = run(["scatter", "--system", "rebit-retrit", "--kind", "w", "--per-class", "200",
                        "--chunk-size", "2000", "--out", str(tmp_path)], capsys)
    assert code == 0 and "pooled correlation" in out
    assert (tmp_path / "scatter-w-rebit-retrit-points.csv").exists()
    code, out, _ = run(["curve", "--system", "qubit-qutrit", "--samples", "1e4", "--bins", "10", "--svg",
                        "--out", str(tmp_path)], capsys)
    assert code == 0 and "equals overall: True" in out
    assert (tmp_path / "curve-qubit-qutrit-plot.svg").exists()


def test_sample_and_bloch(tmp_path, capsys):
    code, _, _ = run(["sample", "--system", "two-qubit", "--samples", "300", "--out", str(tmp_path)], capsys)
    assert code == 0
    rows = list(csv.DictReader((tmp_path / "sample-two-qubit.csv").open()))
    assert len(rows) == 300 and {r["class"] for r in rows} <= {"separable", "entangled"}
    code, out, _ = run(["bloch", "--system", "two-qubit", "--samples", "2e4", "--out", str(tmp_path)], capsys)
    assert code == 0 and "max |z|" in out


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("system = two-qubit\nsamples = 5000\nseed = 9\n")
    code, out, _ = run(["ppt", "--config", str(cfg), "--out", str(tmp_path)], capsys)
    assert code == 0 and "two-qubit" in out
    cfg.write_text("system = two-qubit\nsystem = two-rebit\n")
    assert run(["ppt", "--config", str(cfg)], capsys)[0] == 1


def test_reproduce_figure_master(tmp_path, capsys):
    code, _, _ = run(["reproduce-figure", "--id", "master-formula", "--out", str(tmp_path)], capsys)
    assert code == 0
    assert (tmp_path / "figure-master-formula.svg").exists()
    rows = list(csv.DictReader((tmp_path / "figure-master-formula.csv").open()))
    assert {r["series"] for r in rows} == {"d = 1", "d = 2", "d = 4"}


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "sepscope", "chi", "--d", "2", "--eps", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.splitlines()[0] == "1"
