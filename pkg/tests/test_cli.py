import csv
import io
import json
import subprocess
import sys

import pytest

from conprod.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_free_case_passes(capsys):
    code, out, _ = run(capsys, "eval", "J", "--a-plus", "1", "--a-minus", "2", "--b", "1", "--x", "0.5", "--y", "0.8")
    assert code == 0
    d = json.loads(out)
    assert d["verdict"] == "Pass"
    assert d["rows"][0]["rel_err"] < 1e-10


def test_eval_gamma_returns_re_im(capsys):
    code, out, _ = run(capsys, "eval", "G", "--z", "0.3+0.1j,0")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert set(rows[0]["value"]) == {"re", "im"}
    assert rows[1]["value"]["re"] == pytest.approx(1.0, abs=1e-14)


def test_eval_csv(capsys):
    code, out, _ = run(capsys, "eval", "c", "--b", "0.5", "--z", "0.4", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 1 and "value_re" in rows[0]


@pytest.mark.parametrize("argv", [
    ["eval", "J", "--x", "0.5", "--y", "0.8"],
    ["eval", "nosuch", "--z", "1"],
    ["frobnicate"],
    ["verify"],
    ["verify", "--identity", "nosuch"],
    ["eval", "G", "--a-plus", "-1", "--z", "0.1"],
    ["limit", "--target", "wlim", "--betas", "0.5,0.9"],
])
def test_usage_errors_exit_3(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 3
    assert "usage" in err


def test_limit_exact_case(capsys):
    code, out, _ = run(capsys, "limit", "--target", "JF", "--g", "1", "--r", "0.5", "--k", "0.7")
    assert code == 0
    assert json.loads(out)["verdict"] == "Pass"


def test_bounds_single_id(capsys, tmp_path):
    target = tmp_path / "b.json"
    code, out, _ = run(capsys, "bounds", "--id", "shest", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["rows"][0]["bound_id"] == "shest"


def test_verify_writes_reports_and_summary(capsys, tmp_path):
    out1, out2 = tmp_path / "r1", tmp_path / "r2"
    for d in (out1, out2):
        code, stdout, _ = run(capsys, "verify", "--identity", "jeval", "--identity", "prodap", "--points", "2",
                              "--out", str(d))
        assert code == 0
        assert len(stdout.splitlines()) == 2
    names = sorted(p.name for p in out1.iterdir())
    assert names == ["jeval.json", "prodap.json", "summary.json"]
    for n in names:
        assert (out1 / n).read_bytes() == (out2 / n).read_bytes()
    summary = json.loads((out1 / "summary.json").read_text())
    assert [r["verdict"] for r in summary["results"]] == ["Pass", "Pass"]


def test_verify_tight_tolerance_fails(capsys, tmp_path):
    code, _, _ = run(capsys, "verify", "--identity", "jeval", "--points", "1", "--tol", "1e-30",
                     "--out", str(tmp_path))
    assert code == 1


def test_operator_bad_ladder(capsys):
    code, _, _ = run(capsys, "operator", "--kind", "Iz", "--ladder", "48")
    assert code == 3


def test_operator_small_ladder(capsys):
    code, out, _ = run(capsys, "operator", "--kind", "Jt", "--ladder", "16:6,24:8")
    d = json.loads(out)
    assert code in (0, 1)
    assert [r["n"] for r in d["rows"]] == [16, 24]
    assert "seconds" not in d["rows"][0]


def test_console_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "conprod.cli", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("conprod ")
