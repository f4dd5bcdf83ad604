import math
import shutil
import subprocess
import sys
from pathlib import Path

import pytest
import yaml

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))


def run_cli(command, config_payload, out_dir, tmp_dir):
    config = tmp_dir / f"{command}_{len(list(tmp_dir.iterdir()))}.yaml"
    config.write_text(yaml.safe_dump(config_payload))
    result = subprocess.run(
        [sys.executable, "-m", "onetangle.cli", command,
         "--config", str(config), "--out", str(out_dir)],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0, result.stderr
    return out_dir


@pytest.fixture(scope="session")
def results_dir(tmp_path_factory):
    """One directory with every CSV the recipe catalogue consumes,
    produced through the onetangle CLI."""
    tmp = tmp_path_factory.mktemp("cli_runs")
    out = tmp_path_factory.mktemp("results")

    nucleus = {
        "j": 1.5, "nu_larmor_mhz": 12.98, "a_mhz": 0.23, "a_nc_mhz": 0.01,
        "delta_q_mhz": 0.034, "theta_rad": math.pi / 3,
    }
    run_cli(
        "g1",
        {"nucleus": nucleus, "evolution": {"kind": "free"},
         "time_grid": {"start_us": 0.0, "stop_us": 10.0, "points": 400}},
        out, tmp,
    )
    run_cli("resonances", {"a_mhz": 0.23, "k_max": 10}, out, tmp)

    ensemble = {"n_target": 1500}
    grid = {"start_us": 1e-5, "stop_us": 0.05, "points": 150, "spacing": "log"}
    run_cli(
        "ensemble",
        {"ensemble": ensemble, "evolution": {"kind": "free"}, "time_grid": grid,
         "export_ensemble": True,
         "omega_sweep": {"start_mhz": 10.0, "stop_mhz": 10.3, "step_mhz": 0.1,
                         "time_grid": {"start_us": 1e-5, "stop_us": 0.1,
                                       "points": 200, "spacing": "log"}}},
        out, tmp,
    )
    shutil.copy(out / "curve.csv", out / "curve_free.csv")
    cpmg_out = tmp / "cpmg_run"
    cpmg_out.mkdir()
    run_cli(
        "ensemble",
        {"ensemble": ensemble, "evolution": {"kind": "cpmg", "n_iterations": 1},
         "time_grid": grid},
        cpmg_out, tmp,
    )
    shutil.copy(cpmg_out / "curve.csv", out / "curve_cpmg.csv")

    sweep_template = {
        "j": 1.5, "nu_larmor_mhz": 12.98, "a_sign": -1,
        "a_nc_mhz": 0.058, "theta_rad": math.pi / 4,
    }
    sweep_grid = {
        "x": {"start": 0.0, "stop": 4.0, "points": 40},
        "y": {"start": 0.0, "stop": 1.2, "points": 30},
    }
    run_cli(
        "sweep2d",
        {"grid": sweep_grid, "template": sweep_template,
         "evolution": {"kind": "cpmg", "n_iterations": 1},
         "time": {"mode": "fixed", "t_us": 23.4}},
        out, tmp,
    )
    run_cli(
        "gapmap",
        {"grid": sweep_grid, "template": sweep_template,
         "time": {"mode": "fixed", "t_us": 1.0}},
        out, tmp,
    )
    run_cli("degeneracy-table", {"j": 1.5, "a_sign": -1}, out, tmp)
    return out
