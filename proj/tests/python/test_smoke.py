import json
import math
import os
import subprocess

import numpy as np
import pytest

import cbloch

CLI = os.environ.get("CBLOCH_CLI")


def tiny_config():
    text = cbloch.preset_configs("fig1a")[0]
    return text.replace("t_end: 30", "t_end: 12").replace(
        "snapshot_times: [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, "
        "24, 25, 26, 27, 28, 29, 30]",
        "snapshot_times: [0, 12]",
    )


def test_model_functions():
    p = cbloch.ModelParams(alpha=0.1, omega_y=0.1)
    assert math.isclose(cbloch.critical_frequency(p), 2 * math.pi * 0.1)
    assert cbloch.classify_regime(p) == "slow_driving"
    assert math.isclose(cbloch.predicted_drift_velocity(p) * p.tunneling_period(), 1.0)
    fast = p.with_drive(1.0, 1.0)
    assert cbloch.classify_regime(fast) == "fast_driving"
    assert math.isclose(cbloch.drive_magnitude(fast), 1.0)
    pred = cbloch.predictions(fast)
    assert pred["ballistic_rate"]["kind"] == "linear_growth"
    assert math.isclose(pred["ballistic_rate"]["rate"], 0.5)


def test_rational_approx():
    assert cbloch.rational_approx(18 / 19) == (18, 19)
    assert cbloch.rational_approx((math.sqrt(5) - 1) / 4) is None


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        cbloch.ModelParams(j_x=-1.0)
    with pytest.raises(cbloch.ConfigError):
        cbloch.simulate("kind: scenario\nname: x\n")
    broken = tiny_config().replace("dt: 0.005", "dt: 0.5")
    with pytest.raises(cbloch.NumericalError):
        cbloch.simulate(broken)


def test_presets_are_listed():
    assert cbloch.preset_names() == ["fig1a", "fig1b", "fig2", "fig3", "fig4", "fig5"]
    assert len(cbloch.preset_configs("fig3")) == 3
    with pytest.raises(ValueError):
        cbloch.preset_configs("nope")


def test_simulate_returns_arrays():
    out = cbloch.simulate(tiny_config())
    assert isinstance(out["sigma"], np.ndarray)
    assert out["t"].shape == out["m1"].shape
    assert out["t"][0] == 0.0
    # The transporting packet drifts about one site per tunneling period.
    assert 10.0 < out["m1"][-1] < 14.0
    assert np.all(out["sigma"] >= 0)
    assert sorted(out["snapshots"]) == pytest.approx([0.0, 12 * 2 * math.pi])
    assert out["summary"]["predictions"]["regime"] == "slow_driving"


def test_run_writes_csv(tmp_path):
    summary = cbloch.run(tiny_config(), str(tmp_path))
    traj = (tmp_path / "fig1a_trajectory.csv").read_text().splitlines()
    assert traj[0].startswith("# cbloch.trajectory/1 scenario=fig1a seed=0")
    assert traj[1] == "t,t_over_TJ,m1,m2,sigma,edge_mass"
    assert summary["schema"] == "cbloch.summary/1"
    snap = (tmp_path / "fig1a_snapshots.csv").read_text().splitlines()
    assert snap[1] == "t,t_over_TJ,l,p_l"


@pytest.mark.skipif(not CLI, reason="command-line tool not built")
def test_cli_exit_codes(tmp_path):
    cfg = tmp_path / "tiny.yaml"
    cfg.write_text(tiny_config())
    ok = subprocess.run([CLI, "run", str(cfg), "--out", str(tmp_path / "out"), "--quiet"])
    assert ok.returncode == 0
    assert (tmp_path / "out" / "fig1a_summary.json").exists()

    pred = subprocess.run([CLI, "predict", str(cfg)], capture_output=True, text=True)
    assert pred.returncode == 0
    assert json.loads(pred.stdout)["regime"] == "slow_driving"

    broken = subprocess.run([CLI, "run", str(cfg), "--dt", "0.5", "--out", str(tmp_path / "bad"), "-q"])
    assert broken.returncode == 3
    assert not any((tmp_path / "bad").glob("*.csv"))

    bad = tmp_path / "bad.yaml"
    bad.write_text(tiny_config().replace("j_x: 1", "j_x: -1"))
    assert subprocess.run([CLI, "run", str(bad), "-q"]).returncode == 2
    assert subprocess.run([CLI, "preset", "fig9"]).returncode == 2
    assert subprocess.run([CLI, "sweep", str(cfg), "-q"]).returncode == 2

    env = dict(os.environ, CBLOCH_OUT_DIR=str(tmp_path / "env"))
    assert subprocess.run([CLI, "run", str(cfg), "-q", "--seed", "5"], env=env).returncode == 0
    assert "seed=5" in (tmp_path / "env" / "fig1a_trajectory.csv").read_text().splitlines()[0]
