import json
import subprocess
import sys

import numpy as np
import pytest

from threestate import FIG1A, FIG1A_TWO_STATE, distribution
from threestate.cli import main, read_csv_distribution


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dist_csv_round_trip(capsys):
    code, out, _ = run(capsys, "dist", "--format", "csv")
    assert code == 0
    meta, probs = read_csv_distribution(out)
    assert meta["model"] == "three_state"
    assert "k1_minus=0.13" in meta["rates"]
    # repr floats: parsing gives back the exact doubles
    assert np.array_equal(probs, distribution(FIG1A).probs)


def test_dist_json_round_trip(capsys, tmp_path):
    path = tmp_path / "out" / "dist.json"
    code, out, _ = run(capsys, "dist", "--format", "json", "--output", str(path))
    assert code == 0 and out == ""
    doc = json.loads(path.read_text())
    assert np.array_equal(np.array(doc["p_n"]), distribution(FIG1A).probs)
    assert doc["n"][-1] == doc["n_max"]
    assert doc["gamma"][2] == pytest.approx(0.6241, abs=1e-4)
    # nothing left behind by the atomic write
    assert [p.name for p in path.parent.iterdir()] == ["dist.json"]


def test_dist_two_state(capsys):
    code, out, _ = run(capsys, "dist", "--two-state", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["model"] == "two_state"
    assert np.array_equal(np.array(doc["p_n"]), distribution(FIG1A_TWO_STATE).probs)


def test_dist_delta_rescaling(capsys):
    _, out, _ = run(capsys, "dist", "--format", "json", "--delta", "2",
                    "--k1m", "0.26", "--k1p", "2.6", "--k2m", "4.6", "--k2p", "8.4", "--nu", "6")
    doc = json.loads(out)
    assert doc["rates"]["nu"] == 3.0 and doc["delta_input"] == 2.0
    assert np.allclose(doc["p_n"], distribution(FIG1A).probs, rtol=1e-13, atol=0)


@pytest.mark.parametrize("argv,code", [
    (["dist", "--k1m", "-1"], 2),
    (["dist", "--delta", "0"], 2),
    (["dist", "--tail-bound", "0.5"], 2),
    (["dist", "--nu", "200", "--hard-cap", "20"], 3),
])
def test_exit_codes(capsys, argv, code):
    got, out, err = run(capsys, *argv)
    assert got == code and out == "" and err.startswith("threestate:")


def test_argparse_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["dist", "--format", "xml"])
    assert exc.value.code == 2


def test_fig1a(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("THREESTATE_OUTPUT_DIR", str(tmp_path))
    code, out, _ = run(capsys, "fig1", "a")
    summary = json.loads(out)
    assert code == 0
    assert summary["tv_distance"] < 0.05
    assert sorted(p.name for p in tmp_path.iterdir()) == [
        "fig1a_summary.json", "fig1a_three_state.csv", "fig1a_two_state.csv"]


def test_fig1b(capsys, tmp_path):
    code, out, _ = run(capsys, "fig1", "b", "--out-dir", str(tmp_path), "--format", "json")
    summary = json.loads(out)
    assert code == 0 and summary["means_strictly_decreasing"]
    assert [c["k1_minus"] for c in summary["curves"]] == [0.13, 1.3, 13.0]
    for name in summary["files"]:
        assert json.loads((tmp_path / name).read_text())["model"] == "three_state"


def test_sweep(capsys, tmp_path):
    code, out, _ = run(capsys, "sweep", "--k1m-values", "0,1.3", "--out-dir", str(tmp_path))
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "k1_minus,gamma0,gamma1,gamma2,mean,n_max,tail_mass_bound"
    assert len(lines) == 3 and len(list(tmp_path.iterdir())) == 2


def test_asympt(capsys):
    code, out, _ = run(capsys, "asympt", "2f2", "--fig1a-params", "--nu-multiples", "30",
                       "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 30
    assert set(rows[0]) == {"z", "series", "series_method", "asymptotic", "rel_diff", "branch",
                            "terms_used", "series_seconds", "asymptotic_seconds"}
    far = [r for r in rows if r["z"] <= -40]
    assert all(r["rel_diff"] < 1e-6 for r in far)


def test_asympt_1f1_explicit_z(capsys):
    code, out, _ = run(capsys, "asympt", "1f1", "--a", "1", "--b", "2", "--z=-60,60")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 3
    assert lines[2].split(",")[5] == "asymptotic_exponential"


def test_verify_small(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, _, _ = run(capsys, "verify", "--samples", "20000", "--output", str(path))
    report = json.loads(path.read_text())
    assert report["closed_form_vs_master"]["pass"]
    assert "two_state_reduction" not in report
    assert "workers" not in json.dumps(report) and "seconds" not in json.dumps(report)
    assert code == (0 if report["pass"] else 1)


def test_verify_two_state_line(capsys):
    code, out, _ = run(capsys, "verify", "--k1m", "0", "--samples", "20000")
    report = json.loads(out)
    assert report["two_state_reduction"]["pass"]
    assert report["two_state_reduction"]["max_abs_difference"] < 1e-12


def test_verify_failure_exit_code(capsys):
    # 500 samples cannot meet the TV threshold
    code, out, _ = run(capsys, "verify", "--samples", "500")
    assert code == 1 and not json.loads(out)["pass"]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "threestate", "--version"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("threestate ")
