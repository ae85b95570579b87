import json

import pytest

from cglsolve.cli import main
from cglsolve.experiments import available_presets, config_to_dict, make_preset


def test_preset_list(capsys):
    assert main(["preset", "list"]) == 0
    out = capsys.readouterr().out
    for name in available_presets():
        assert name in out


def test_run_json_output(capsys):
    rc = main(["run", "--preset", "plane-wave-1d", "--steps", "10",
               "--format", "json"])
    assert rc == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["preset"] == "plane-wave-1d"
    assert summary["steps"] == 10
    assert summary["diverged"] is False


def test_run_flag_overrides(capsys):
    rc = main(["run", "--preset", "plane-wave-1d", "--steps", "8",
               "--tfinal", "0.5", "--grid", "32", "--scheme", "strang",
               "--format", "json"])
    assert rc == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["t_reached"] == pytest.approx(0.5)
    assert summary["extents"] == [32]
    assert summary["scheme"] == "strang"


def test_run_config_file(tmp_path, capsys):
    cfg = config_to_dict(make_preset("plane-wave-1d"))
    cfg["steps"] = 5
    cfg["extents"] = [48]
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    rc = main(["run", "--config", str(path), "--format", "json"])
    assert rc == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["steps"] == 5
    assert summary["extents"] == [48]


def test_sweep_writes_reports(tmp_path, capsys):
    rc = main(["sweep", "--preset", "plane-wave-1d", "--schemes", "strang",
               "--steps", "10,20", "--out", str(tmp_path)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "least-squares order strang" in out
    assert (tmp_path / "plane-wave-1d-sweep.csv").exists()
    mirror = json.loads((tmp_path / "plane-wave-1d-sweep.json").read_text())
    assert [r["steps"] for r in mirror] == [10, 20]


def test_sweep_stability_mode(capsys):
    rc = main(["sweep", "--preset", "cubic-2d-dirichlet", "--stability",
               "--schemes", "rk4,strang", "--steps", "10", "--format",
               "csv"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "rk4,10" in out and ",x" in out
    assert "strang,10" in out and ",ok" in out


def test_missing_config_is_a_usage_error():
    with pytest.raises(SystemExit):
        main(["run", "--steps", "5"])
