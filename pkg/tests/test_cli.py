from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from holant_lab.cli import run
from holant_lab.cyclo import cyc

DATA = Path(__file__).resolve().parent.parent / "data"


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_theta(capsys):
    code, out, _ = call(capsys, "eval", "--graph", str(DATA / "theta.json"), "--signature", "[2,1,3]")
    assert code == 0 and out.strip() == "37"


def test_eval_grid_and_json(capsys):
    code, out, _ = call(capsys, "eval", "--graph", str(DATA / "k4.json"), "--signature", "[5,0,7]", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["value"] == "133274"


def test_symmetrize(capsys):
    code, out, _ = call(capsys, "symmetrize", "--graph", str(DATA / "theta.json"), "--format", "json")
    assert code == 0 and json.loads(out)["P"].replace(" ", "") in {"Y+2", "2+Y"}


def test_classify_and_witness_exit_codes(capsys):
    code, out, _ = call(capsys, "classify", "--a", "i", "--b", "i")
    assert code == 0 and out.startswith("Tractable")
    code, _, err = call(capsys, "witness", "--a", "i", "--b", "i")
    assert code == 3 and "NotHard" in err
    code, out, _ = call(capsys, "witness", "--a", "0", "--b", "1")
    assert code == 0 and json.loads(out)["reverified"] is True
    code, out, _ = call(capsys, "classify", "--a", "2", "--b", "2", "--planar", "--format", "json")
    assert json.loads(out)["verdict"] == "PlanarTractableGeneralHard"


def test_error_exit_codes(capsys, tmp_path):
    assert call(capsys, "eval")[0] == 1
    assert call(capsys, "nonsense")[0] == 1
    assert call(capsys, "classify", "--a", "2-2i", "--b", "1")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    assert call(capsys, "eval", "--graph", str(bad), "--signature", "[1,1,1]")[0] == 2
    assert call(capsys, "gadget-signature", "--gadget", "1")[0] == 3
    assert call(capsys, "scan-real", "--range", "1,2,3")[0] == 1


def test_verify_identities_reports_the_b9_erratum(capsys):
    code, out, _ = call(capsys, "verify-identities")
    assert code == 4
    assert "charpoly_M9\t" in out and "39/40 identities pass" in out


def test_interpolate_demo(capsys):
    code, out, _ = call(capsys, "interpolate-demo", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "EQUAL" and doc["interpolated"] == "1439"
    code, out, _ = call(capsys, "interpolate-demo", "--gadget", "abEqual", "--a", "1+i", "--b", "1+i")
    assert code == 0 and out.strip().endswith("EQUAL")
    code, out, _ = call(capsys, "interpolate-demo", "--gadget", "10", "--a", "1+i", "--b", "1")
    assert code == 0


def test_scan_real_small(capsys):
    code, out, _ = call(capsys, "scan-real", "--range=-1,1", "--step", "1/2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["counterexamples"] == [] and doc["points"] == 25


def test_gadget_signature(capsys):
    code, out, _ = call(capsys, "gadget-signature", "--grid", str(DATA / "finisher_gate.json"), "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["symmetric"] is None
    assert doc["transfer_matrix"] == [["2", "0", "1"], ["1", "0", "3"]]
    code, out, _ = call(capsys, "gadget-signature", "--gadget", "10", "--a", "2", "--b", "3", "--format", "json")
    assert json.loads(out)["at"]["matrix"] == [["9", "11"], ["7", "28"]]


def test_printed_values_round_trip(capsys):
    code, out, _ = call(capsys, "witness", "--a", "1+i", "--b", "1", "--format", "json")
    doc = json.loads(out)
    for s in doc["trail"]:
        for key in ("lhs", "rhs"):
            assert str(cyc(s[key])) == s[key]


def test_jobs_do_not_change_output(capsys, tmp_path):
    outs = []
    for jobs in ("1", "3"):
        path = tmp_path / f"scan{jobs}.json"
        code = run(["scan-real", "--range=-2,2", "--step", "1/4", "--jobs", jobs, "--out", str(path), "--format", "json"])
        assert code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_out_flag_writes_file(capsys, tmp_path):
    path = tmp_path / "r.txt"
    assert run(["eval", "--graph", str(DATA / "theta.json"), "--signature", "[2,1,3]", "--out", str(path)]) == 0
    assert path.read_text().strip() == "37"


@pytest.mark.slow
def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "holant_lab.cli", "classify", "--a", "1", "--b", "1"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("Tractable")
