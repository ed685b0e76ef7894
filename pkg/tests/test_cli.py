import csv
import io
import json
import subprocess
import sys

import pytest

from hyperavg import __version__
from hyperavg.cli import SIM_COLUMNS, main, parse_args


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_args_defaults():
    a = parse_args(["simulate", "--builtin", "cycle:5"])
    assert (a.steps, a.trials, a.seed, a.mode) == (100, None, 0, "edge")
    a = parse_args(["verify", "--claim", "theorem2", "--builtin", "complete:4", "--steps", "3", "--exact"])
    assert a.mode == "exact" and a.report == "json"


@pytest.mark.parametrize(
    "argv",
    [
        ["simulate", "--builtin", "cycle:5", "--steps", "-1"],
        ["simulate", "--builtin", "cycle:5", "--trials", "0"],
        ["simulate", "--builtin", "cycle:5", "--input", "x.hg"],
        ["verify", "--claim", "theorem2", "--steps", "3"],
        ["verify", "--claim", "prop5"],
        ["verify", "--claim", "corollary", "--builtin", "cycle:5", "--exact"],
        ["verify", "--claim", "prop5", "--steps", "3", "--exact", "--mc"],
        ["figure", "--which", "FS", "--every", "0"],
        ["spectrum"],
    ],
)
def test_parse_args_rejects(argv, capsys):
    with pytest.raises(SystemExit) as info:
        parse_args(argv)
    assert info.value.code == 2


def test_version(capsys):
    with pytest.raises(SystemExit):
        main(["--version"])
    assert capsys.readouterr().out.startswith(f"hyperavg {__version__} (")


def test_spectrum_json(capsys):
    code, out, _ = run(["spectrum", "--builtin", "complete:4"], capsys)
    d = json.loads(out)
    assert code == 0
    assert d["eigenvalues"] == pytest.approx([0, 4, 4, 4], abs=1e-10)
    assert d["decay_rate"] == pytest.approx(2 / 3) and d["connected"] and d["codegree_regular"] == 1


def test_spectrum_from_file(tmp_path, capsys):
    p = tmp_path / "h.hg"
    p.write_text("4 3\n0 1\n0 1\n1 2 3\n")
    code, out, _ = run(["spectrum", "--input", str(p)], capsys)
    assert code == 0 and json.loads(out)["edges"] == 3


def test_simulate_csv(tmp_path, capsys):
    out_path = tmp_path / "sim.csv"
    code, _, err = run(
        ["simulate", "--builtin", "petersen", "--steps", "5", "--trials", "10", "--seed", "4", "--out", str(out_path)],
        capsys,
    )
    assert code == 0 and "seed=4" in err
    rows = list(csv.reader(out_path.open()))
    assert tuple(rows[0]) == SIM_COLUMNS and len(rows) == 7
    assert b"\r\n" not in out_path.read_bytes()


def test_simulate_neighborhood_needs_graph(capsys):
    code, _, err = run(["simulate", "--builtin", "fano", "--mode", "neighborhood", "--steps", "2"], capsys)
    assert code == 2 and "error" in err
    code, out, _ = run(["simulate", "--builtin", "cycle:5", "--mode", "neighborhood", "--steps", "2"], capsys)
    assert code == 0 and out.splitlines()[0] == ",".join(SIM_COLUMNS)


def test_verify_pass_json(capsys):
    code, out, err = run(
        ["verify", "--claim", "theorem3", "--builtin", "knr:5:3", "--steps", "3", "--weights", "builtin:path-endpoints"],
        capsys,
    )
    reports = json.loads(out)
    assert code == 0 and reports[0]["verdict"] == "pass"
    assert set(reports[0]) == {"claim", "measured", "reference", "relation", "tolerance", "verdict", "metadata"}
    assert "theorem3: pass" in err


def test_verify_prop5_csv(capsys):
    code, out, _ = run(["verify", "--claim", "prop5", "--steps", "4", "--report", "csv"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 4 and rows[3]["measured"] == str(11 / 16)


def test_verify_exit_codes(tmp_path, capsys):
    w = tmp_path / "w.csv"
    w.write_text("1\n0\n0\n0\n")
    code, _, _ = run(
        ["verify", "--claim", "theorem2", "--input", _write_h(tmp_path), "--weights", str(w), "--steps", "2"], capsys
    )
    assert code == 0
    # one sampled trajectory is not its mean: seed 3 lands above the bound
    code, out, err = run(
        ["verify", "--claim", "theorem2", "--builtin", "path:6", "--steps", "10", "--mc", "--trials", "1", "--seed", "3"],
        capsys,
    )
    assert code == 1 and json.loads(out)[0]["verdict"] == "fail" and "theorem2: fail" in err
    code, _, err = run(
        ["verify", "--claim", "theorem2", "--builtin", "cycle:4", "--steps", "40", "--budget", "10"], capsys
    )
    assert code == 2 and "budget" in err


def _write_h(tmp_path):
    p = tmp_path / "h.hg"
    p.write_text("4 3\n0 1\n0 1\n1 2 3\n")
    return str(p)


def test_bad_input_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.hg"
    p.write_text("3 2\n0 1\n")
    code, _, err = run(["spectrum", "--input", str(p)], capsys)
    assert code == 2 and "bad.hg" in err
    code, _, _ = run(["spectrum", "--input", str(tmp_path / "missing.hg")], capsys)
    assert code == 2
    code, _, _ = run(["spectrum", "--builtin", "dodecahedron"], capsys)
    assert code == 2


def test_figure_and_probe(capsys):
    code, out, _ = run(["figure", "--which", "F1", "--n", "6", "--t-max", "10", "--trials", "4", "--every", "5"], capsys)
    lines = out.splitlines()
    assert code == 0 and lines[0] == "t,mean_delta1,stderr_delta1" and len(lines) == 4
    code, out, _ = run(["probe", "--which", "conj1", "--n", "10", "--trials", "4"], capsys)
    assert code == 0 and out.splitlines()[0].startswith("conjecture,n,weights,k,t")


def test_console_script_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "hyperavg.cli", "verify", "--claim", "prop6", "--steps", "3"],
        capture_output=True, text=True,
    )
    assert out.returncode == 0 and "seed=0" in out.stderr
