import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from lotto_lab import cli


def run(argv, capsys):
    code = cli.run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_spe_json(capsys):
    code, out, _ = run(["spe", "--P", "1", "--RA", "1", "--RB", "1"], capsys)
    assert code == 0
    d = json.loads(out)
    assert d["regime"] == "Case1"
    assert d["pi_A"] == pytest.approx(0.7320508075688772, abs=1e-12)


def test_invest_json(capsys):
    code, out, _ = run(["invest", "--MA", "1.3333", "--cA", "0.423", "--RB", "1"], capsys)
    d = json.loads(out)
    assert code == 0 and d["branch"] == "Interior"
    # cost 0.423 exactly; 2.309 needs c_A = 1 - 1/sqrt(3)
    assert d["P_star"] == pytest.approx(2.3065, abs=1e-3)
    assert d["RA_star"] == pytest.approx(0.357, abs=1e-3)
    assert d["pi_opt"] == pytest.approx(0.75, abs=1e-3)


def test_stage2_default_proportional(capsys):
    code, out, _ = run(["stage2", "--P", "1", "--RA", "1", "--w", "0.5,0.5"], capsys)
    d = json.loads(out)
    assert code == 0
    assert d["pi_A"] == pytest.approx(0.7320508075688772, abs=1e-10)


def test_stage2_explicit(capsys):
    code, out, _ = run(["stage2", "--P", "1", "--RA", "0.7", "--RB", "1.2",
                        "--w", "0.5,0.5", "--p", "0.9,0.1"], capsys)
    d = json.loads(out)
    assert d["B1"] == "0;1" and d["method"] == "ClosedFormPartition"
    assert d["pi_A"] == pytest.approx(0.5741712112804107, abs=1e-12)


def test_stackelberg_and_ratio(capsys):
    _, out, _ = run(["stackelberg", "--MA", "0.5", "--cA", "0.2", "--MB", "2", "--cB", "0.5"],
                    capsys)
    assert json.loads(out)["u_A"] == pytest.approx(0.09375, abs=1e-12)
    _, out, _ = run(["ratio", "--RA", "0.5", "--RB", "1", "--format", "csv"], capsys)
    assert out == "E,P_eq\n2.6666666666666665,1.3333333333333333\n"


def test_level_curve_csv(capsys):
    _, out, _ = run(["level-curve", "--Pi", "0.5", "--num", "3", "--format", "csv"], capsys)
    assert out == "P,R_A\n0.0,1.0\n1.0,0.25\n2.0,0.0\n"


def test_sweep_payoff_curve_has_inflection(capsys):
    code, out, _ = run(["sweep", "--cmd", "spe", "--axis", "P:0:3:151", "--RA", "0.5",
                        "--RB", "1", "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0])[:2] == ["P", "pi_A"]
    assert list(rows[0])[-1] == "regime"
    assert len(rows) == 151
    pi = np.array([float(r["pi_A"]) for r in rows])
    assert np.all(np.diff(pi) >= 0)
    d2 = np.diff(pi, 2)
    # convex while in the all-B2 regime, concave after
    assert d2[:5].min() >= -1e-12 and d2[-50:].max() < 0
    assert {r["regime"] for r in rows} == {"Case1", "Case2"}


def test_sweep_two_axes_row_order(capsys):
    _, out, _ = run(["sweep", "--cmd", "spe", "--axis", "P:0:1:3", "--axis", "RA:0.5:1:2",
                     "--format", "csv"], capsys)
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][:2] == ["P", "RA"]
    assert [(r[0], r[1]) for r in rows[1:]] == [
        ("0.0", "0.5"), ("0.0", "1.0"), ("0.5", "0.5"), ("0.5", "1.0"), ("1.0", "0.5"),
        ("1.0", "1.0")]


def test_sweep_booleans_as_bits(capsys):
    _, out, _ = run(["sweep", "--cmd", "spe", "--axis", "P:0:1:2", "--RA", "0",
                     "--format", "csv"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["degenerate"] for r in rows] == ["1", "0"]


def test_parallel_sweep_is_byte_identical(tmp_path, monkeypatch):
    argv = ["sweep", "--cmd", "stackelberg", "--axis", "MB:0.01:3:1200", "--MA", "0.5",
            "--cA", "0.2", "--cB", "0.5", "--format", "csv"]
    monkeypatch.setenv("LOTTO_LAB_THREADS", "1")
    assert cli.run(argv + ["--output", str(tmp_path / "a.csv")]) == 0
    monkeypatch.setenv("LOTTO_LAB_THREADS", "3")
    assert cli.run(argv + ["--output", str(tmp_path / "b.csv")]) == 0
    a = (tmp_path / "a.csv").read_bytes()
    assert a == (tmp_path / "b.csv").read_bytes()
    assert b"\r" not in a
    assert a.count(b"\n") == 1201


def test_config_file_and_precedence(tmp_path, capsys):
    cfg = {"command": "spe", "params": {"P": 1, "R_A": 0.2, "RB": 1},
           "output": {"format": "json"}}
    path = tmp_path / "run.json"
    path.write_text(json.dumps(cfg))
    _, out, _ = run(["spe", "--config", str(path)], capsys)
    from_file = json.loads(out)["pi_A"]
    _, out, _ = run(["spe", "--config", str(path), "--RA", "1"], capsys)
    assert json.loads(out)["pi_A"] == pytest.approx(0.7320508075688772)
    assert from_file != json.loads(out)["pi_A"]


def test_config_sweep_section(tmp_path, capsys):
    cfg = {"command": "sweep", "params": {"cmd": "ratio", "RB": 1.0},
           "sweep": [{"axis": "RA", "start": 0.5, "stop": 1.5, "steps": 3}],
           "output": {"path": str(tmp_path / "r.csv"), "format": "csv"}}
    path = tmp_path / "run.json"
    path.write_text(json.dumps(cfg))
    code, out, _ = run(["sweep", "--config", str(path)], capsys)
    assert code == 0 and out == ""
    text = (tmp_path / "r.csv").read_text()
    assert text.splitlines()[0] == "RA,E,P_eq"
    assert text.splitlines()[-1] == "1.5,2.0,3.0"


def test_config_rejects_unknown_keys(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"command": "spe", "extra": 1}))
    code, _, err = run(["spe", "--config", str(path)], capsys)
    assert code == 1 and "unknown config keys" in err


@pytest.mark.parametrize("argv", [
    ["spe", "--P", "-1"],
    ["spe", "--w", "1,-1", "--P", "1"],
    ["stackelberg", "--MA", "1"],
    ["invest", "--MA", "1", "--cA", "0", "--RB", "1"],
    ["sweep", "--cmd", "spe"],
    ["sweep", "--cmd", "spe", "--axis", "P:0:1"],
    ["frobnicate"],
    ["verify", "--checks", "nope"],
])
def test_validation_errors_exit_1(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 1 and out == ""
    msg = json.loads(err.strip().splitlines()[-1])
    assert msg["error"] == "validation"


def test_solver_failure_exit_2(capsys):
    code, _, err = run(["stage2", "--P", "2", "--RA", "0", "--w", "0.5,0.5", "--p", "2,0"],
                       capsys)
    assert code == 2
    assert json.loads(err)["error"] == "solver"


def test_verify_ok(capsys):
    code, out, _ = run(["verify", "--checks", "baseline,threshold_interval"], capsys)
    assert code == 0
    assert [d["pass"] for d in json.loads(out)] == [True, True]


def test_verify_failure_exit_3(monkeypatch, capsys):
    from lotto_lab import oracle
    monkeypatch.setitem(oracle.CHECKS, "baseline",
                        oracle.Check(oracle.CHECKS["baseline"].fn, -1.0))
    code, out, err = run(["verify", "--checks", "baseline"], capsys)
    assert code == 3
    assert json.loads(out)[0]["pass"] is False
    assert "baseline" in json.loads(err)["message"]


def test_failed_run_leaves_no_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, _, _ = run(["spe", "--P", "-1", "--output", str(target)], capsys)
    assert code == 1
    assert list(tmp_path.iterdir()) == []


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lotto_lab", "ratio", "--RA", "2", "--RB", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["E"] == 2.0
