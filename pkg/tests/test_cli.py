import json

import pytest

from logwave.cli import DEFAULT_CONFIG, load_config, main, validate_config
from logwave.errors import ConfigError


def test_default_config_valid():
    cfg = validate_config({})
    assert cfg["grid"]["points"] == 512


def test_schema_rejection_names_field(tmp_path):
    bad = {"energy": {"theta": 1.5}}
    with pytest.raises(ConfigError) as err:
        validate_config(bad)
    assert "energy.theta" in str(err.value)
    with pytest.raises(ConfigError) as err2:
        validate_config({"grid": {"points": 100}})
    assert "grid.points" in str(err2.value)
    with pytest.raises(ConfigError) as err3:
        validate_config({"suites": ["nonsense"]})
    assert "suites" in str(err3.value)


def test_seed_override(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"seed": 1}))
    cfg = load_config(str(path), seed_override=99)
    assert cfg["seed"] == 99


def test_cli_exit_code_on_bad_config(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"energy": {"theta": 1.5}}))
    code = main(["verify", "--config", str(path), "--out", str(tmp_path / "o")])
    assert code == 2
    assert "energy.theta" in capsys.readouterr().err


def test_verify_partition_suite(tmp_path, capsys):
    code = main(["verify", "--suite", "partition", "--out", str(tmp_path)])
    assert code == 0
    report = json.loads((tmp_path / "verify.json").read_text())
    suite = report["suites"][0]
    assert suite["suite"] == "partition"
    assert suite["status"] == "pass"
    assert suite["measured"]["max_defect"]["value"] <= 1e-12
    assert suite["measured"]["max_defect"]["provenance"] == "measured"


def test_verify_bernstein_suite(tmp_path):
    code = main(["verify", "--suite", "bernstein", "--out", str(tmp_path)])
    assert code == 0
    report = json.loads((tmp_path / "verify.json").read_text())
    m = report["suites"][0]["measured"]
    assert 0.95 <= m["slope_alpha1"]["value"] <= 1.05


def test_report_without_artifacts(tmp_path):
    assert main(["report", "--out", str(tmp_path)]) == 2


SMALL = {
    "grid": {"points": 256},
    "coefficients": {"ll_depth": 5, "lz_depth": 8},
    "data": {"rings": [2, 3]},
    "energy": {"beta_sweep": [2.0, 4.0], "nu_max": 5},
}


def test_energy_pipeline_and_report(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(SMALL))
    out = tmp_path / "run"
    code = main(["energy", "--config", str(cfg), "--out", str(out)])
    assert code == 0
    rows = (out / "energy.csv").read_text().strip().splitlines()
    header = rows[0].split(",")
    assert header[0] == "t"
    assert header[-1] == "verdict"
    assert "e_0" in header and "e_5" in header and "dEdt" in header
    assert len(rows) >= 10
    summary = json.loads((out / "summary.json").read_text())
    assert summary["verdict"]["value"] == "pass"
    assert summary["gamma"]["provenance"] == "measured"
    assert (out / "loss.csv").exists()
    assert main(["report", "--out", str(out)]) == 0


def test_solve_dumps_snapshots_and_is_reproducible(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(SMALL))
    out1 = tmp_path / "r1"
    out2 = tmp_path / "r2"
    assert main(["solve", "--config", str(cfg), "--out", str(out1)]) == 0
    assert main(["solve", "--config", str(cfg), "--out", str(out2)]) == 0
    assert (out1 / "trajectory.npz").exists()
    assert (out1 / "energy.csv").read_bytes() == (out2 / "energy.csv").read_bytes()
    assert (out1 / "loss.csv").read_bytes() == (out2 / "loss.csv").read_bytes()


def test_verify_threads_fan_out(tmp_path):
    code = main(["verify", "--suite", "partition", "--suite", "bernstein",
                 "--threads", "2", "--out", str(tmp_path)])
    assert code == 0
    report = json.loads((tmp_path / "verify.json").read_text())
    assert {s["suite"] for s in report["suites"]} == {"partition", "bernstein"}
