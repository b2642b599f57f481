"""Shared fixtures: real harness outputs generated through the public
command-line interface, plus one small hand-frozen table."""

import subprocess
import sys

import pytest

HARNESS = "rewire-epi"


def _run_harness(args, out_dir):
    cmd = [HARNESS, *args, "--out-dir", str(out_dir)]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    if proc.returncode != 0:
        pytest.fail(f"harness call failed ({' '.join(cmd)}):\n{proc.stderr}")
    return out_dir


@pytest.fixture(scope="session")
def trajectory_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("trajectory")
    return _run_harness(
        ["trajectory", "--n", "120", "--reps", "100", "--seed", "1",
         "--mu", "5", "--lam", "1.5", "--gamma", "1", "--omega", "4",
         "--alpha", "1", "--init-frac", "0.01"], out)


@pytest.fixture(scope="session")
def sweep_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("sweep")
    return _run_harness(
        ["final_size_sweep", "--n", "150", "--reps", "10", "--seed", "2",
         "--mu", "2", "--gamma", "0", "--omega", "0.4", "--alpha", "1",
         "--lambda-grid", "0.2,0.6,1.0,1.5"], out)


@pytest.fixture(scope="session")
def susonly_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("susonly")
    return _run_harness(
        ["susonly_sweep", "--n", "150", "--reps", "8", "--seed", "3",
         "--mu", "2.5", "--gamma", "1", "--omega", "10", "--alpha", "1",
         "--lambda-grid", "6,8.5,12"], out)


@pytest.fixture(scope="session")
def yd_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("yd")
    return _run_harness(
        ["yd_compare", "--n", "200", "--reps", "10", "--seed", "4",
         "--mu", "2", "--lam", "1", "--alpha", "1",
         "--omega-grid", "0.2,0.5,0.8"], out)


TAU0_TABLE = """mu,tau0,rho
1.2,0,0.313698
1.4,0,0.511011
1.6,0.421999,0.641981
1.8,0.76098,0.73243
2.0,0.883414,0.796812
2.2,0.937383,0.843739
2.4,0.964221,0.878596
2.6,0.978674,0.904889
2.8,0.986903,0.924975
3.0,0.991779,0.94048
"""


@pytest.fixture(scope="session")
def tau0_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("tau0") / "tau0_vs_giant.csv"
    path.write_text(TAU0_TABLE)
    return path
