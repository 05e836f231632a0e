"""End-to-end runs of the command-line entry point, all in process."""
import json

import numpy as np
import pytest

from qgalab.cli import main
from qgalab.games import run_up_game, up_copy
from qgalab.qga import iqp_poly_qga, qga_from_json
from qgalab.states import state_from_json


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# reproducibility contracts
# ---------------------------------------------------------------------------

def test_reports_are_byte_identical_across_reruns(capsys):
    args = ("sample", "--seed", "5", "--lambda", "2", "--candidate", "3")
    code1, out1, err1 = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    assert "elapsed_ms=" in err1  # timing goes to stderr, never the report


def test_reports_do_not_depend_on_workers(capsys):
    base = ("game", "--id", "up", "--trials", "40", "--lambda", "2", "--seed", "9")
    code1, out1, _ = run_cli(capsys, *base, "--workers", "1")
    code2, out2, _ = run_cli(capsys, *base, "--workers", "3")
    assert code1 == code2 == 0
    assert out1 == out2


def test_game_matches_library_call(capsys):
    code, out, _ = run_cli(capsys, "game", "--id", "up", "--adversary", "copy",
                           "--trials", "50", "--seed", "123")
    assert code == 0
    report = json.loads(out)
    direct = run_up_game(iqp_poly_qga(3, 3, None), up_copy, 2, 50, seed=123)
    assert report["successes"] == direct.successes
    assert report["estimate"] == direct.estimate
    assert report["ci"] == [direct.ci_low, direct.ci_high]
    assert report["params"]["adversary"] == "copy"


# ---------------------------------------------------------------------------
# validation failures exit with 2
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("argv", [
    ("sample", "--d", "0"),
    ("sample", "--lambda", "25"),
    ("sample", "--candidate", "bogus"),
    ("sample", "--format", "csv"),
    ("game", "--id", "nonsense"),
    ("game", "--trials", "5"),                                   # --id missing
    ("game", "--id", "uc", "--t", "2", "--tprime", "2"),
    ("game", "--id", "ucfsg", "--lambda", "7", "--tprime", "3"),
    ("game", "--id", "up", "--adversary", "cloner"),
    ("game", "--id", "pr0-vs-warp1"),
    ("game", "--id", "attack-iqp-pru", "--candidate", "random-circuit"),
    ("prfsg-eval", "--ell", "9"),
])
def test_validation_errors(capsys, argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err.startswith("error:")


def test_config_file_validation(capsys, tmp_path):
    bad_key = tmp_path / "bad-key.json"
    bad_key.write_text('{"trials": 10, "colour": 3}')
    assert run_cli(capsys, "sample", "--config", str(bad_key))[0] == 2

    bad_json = tmp_path / "bad.json"
    bad_json.write_text("{not json")
    assert run_cli(capsys, "sample", "--config", str(bad_json))[0] == 2

    assert run_cli(capsys, "sample", "--config", str(tmp_path / "absent.json"))[0] == 2


def test_config_file_merge_order(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"trials": 30, "lambda": 2}')
    code, out, _ = run_cli(capsys, "sample", "--config", str(cfg), "--trials", "40")
    assert code == 0
    report = json.loads(out)
    assert report["config"]["trials"] == 40   # flag beats file
    assert report["config"]["lambda"] == 2    # file beats default


# ---------------------------------------------------------------------------
# outputs
# ---------------------------------------------------------------------------

def test_sample_report_round_trips(capsys):
    code, out, _ = run_cli(capsys, "sample", "--lambda", "2", "--seed", "3")
    assert code == 0
    report = json.loads(out)
    assert report["family"]["name"] == "iqp-sparse"
    element = qga_from_json(report["group_element"])
    assert element.num_qubits == 2
    assert "workers" not in report["config"]
    assert "out" not in report["config"]


def test_out_flag_writes_file_and_silences_stdout(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "sample", "--seed", "4", "--out", str(target))
    assert code == 0
    assert out == ""
    direct = run_cli(capsys, "sample", "--seed", "4")[1]
    assert target.read_text() == direct


def test_csv_game_output(capsys):
    code, out, _ = run_cli(capsys, "game", "--id", "up", "--trials", "10",
                           "--lambda", "2", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "trial,outcome"
    assert len(lines) == 11
    assert all(line.split(",")[1] in ("0", "1") for line in lines[1:])


def test_csv_needs_recorded_outcomes(capsys):
    code, _, err = run_cli(capsys, "game", "--id", "attack-iqp-pru",
                           "--trials", "10", "--lambda", "2", "--format", "csv")
    assert code == 2
    assert "outcome" in err


def test_attack_game_report(capsys):
    code, out, _ = run_cli(capsys, "game", "--id", "attack-iqp-pru",
                           "--trials", "30", "--lambda", "3", "--seed", "2")
    assert code == 0
    report = json.loads(out)
    assert report["detail"]["iqp_rate"] == 1.0


def test_ske_roundtrip_report(capsys):
    code, out, _ = run_cli(capsys, "ske-roundtrip", "--trials", "20",
                           "--lambda", "2", "--ell", "2", "--t", "2")
    assert code == 0
    report = json.loads(out)
    assert report["zero_message"]["estimate"] == 1.0
    assert report["ones_per_bit"]["trials"] == 40
    assert 0.0 <= report["ones_message"]["estimate"] <= 1.0


def test_money_demo_report(capsys):
    code, out, _ = run_cli(capsys, "money-demo", "--trials", "20", "--lambda", "2")
    assert code == 0
    report = json.loads(out)
    assert report["honest_accept"]["estimate"] == 1.0
    assert report["counterfeit_expected"] == 0.25
    assert report["counterfeit_accept"]["estimate"] < 0.75


def test_prfsg_eval_report(capsys):
    code, out, _ = run_cli(capsys, "prfsg-eval", "--ell", "2", "--lambda", "2",
                           "--seed", "6")
    assert code == 0
    report = json.loads(out)
    assert sorted(report["states"]) == ["00", "01", "10", "11"]
    for encoded in report["states"].values():
        state = state_from_json(encoded)
        assert abs(np.linalg.norm(state.amplitudes) - 1) < 1e-12
    assert report["key"]["ell"] == 2


def test_ega_check_report(capsys):
    code, out, _ = run_cli(capsys, "ega-check", "--trials", "2000")
    assert code == 0
    report = json.loads(out)
    assert report["axioms"] == {"identity": True, "compatibility": True}
    assert report["properties"]["regular"] is True
    assert report["orbit_uniformity"]["p_value"] > 0.001
    assert report["action"]["p"] == 23
