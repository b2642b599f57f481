"""Experiment orchestration: parameter sweeps, simulation batches, and
CSV/manifest persistence for the plotting front end."""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field, asdict

import numpy as np

from . import __version__
from .branching import extinction_probability, malthusian_rate
from .ctmc import SimConfig, run, replicate_seeds
from .finalsize import (
    Monotonicity,
    Regime,
    monotonicity_class,
    si_discontinuity,
    sir_discontinuity_bounds,
    solve_si_final,
    solve_susonly_final,
    yd_final_size,
)
from .ode import epidemic_start, integrate_main, sir_final_size
from .oracle import run_naive
from .params import Params, RewireMode, compute_lambda_c, compute_r0

EXPERIMENT_KINDS = (
    "trajectory",
    "final_size_sweep",
    "phase_diagram",
    "susonly_sweep",
    "yd_compare",
    "oracle_validate",
    "branching_sweep",
)

ORACLE_N_CAP = 2000


class ConfigError(ValueError):
    """Invalid experiment configuration."""


@dataclass
class ExperimentConfig:
    kind: str
    out_dir: str = "results"
    seed: int = 0
    n: int = 2000
    reps: int = 100
    threads: int = 1
    mu: float = 2.0
    lam: float = 1.0
    gamma: float = 0.0
    omega: float = 0.0
    alpha: float = 0.0
    mode: str = "uniform_all"
    init_frac: float = 0.0  # 0 means a single initial infective
    eps: float = 1e-10
    lambda_grid: list[float] = field(default_factory=list)
    omega_grid: list[float] = field(default_factory=list)
    mu_grid: list[float] = field(default_factory=list)
    alpha_grid: list[float] = field(default_factory=list)

    def validate(self) -> None:
        if self.kind not in EXPERIMENT_KINDS:
            raise ConfigError(f"unknown experiment kind {self.kind!r}")
        if self.n < 3:
            raise ConfigError("n must be >= 3")
        if self.reps < 1:
            raise ConfigError("reps must be >= 1")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        if self.kind == "oracle_validate" and self.n > ORACLE_N_CAP:
            raise ConfigError(f"oracle_validate requires n <= {ORACLE_N_CAP}")
        grids = {"final_size_sweep": self.lambda_grid,
                 "susonly_sweep": self.lambda_grid,
                 "yd_compare": self.omega_grid,
                 "branching_sweep": self.lambda_grid,
                 "phase_diagram": self.mu_grid}
        if self.kind in grids and not grids[self.kind]:
            raise ConfigError(f"{self.kind} needs a non-empty grid")
        if self.kind == "phase_diagram" and not self.alpha_grid:
            raise ConfigError("phase_diagram needs a non-empty alpha grid")
        try:
            self.params()
            RewireMode(self.mode)
        except ValueError as e:
            raise ConfigError(str(e)) from e

    def params(self, **over) -> Params:
        base = dict(mu=self.mu, lam=self.lam, gamma=self.gamma,
                    omega=self.omega, alpha=self.alpha)
        base.update(over)
        return Params(**base)

    @property
    def initial_infectives(self) -> int:
        if self.init_frac > 0:
            return max(1, round(self.init_frac * self.n))
        return 1


def _fmt(x: float) -> str:
    return f"{x:.9g}"


class _Outputs:
    """Collects written files so partial results can be removed on failure."""

    def __init__(self, out_dir: str):
        self.out_dir = out_dir
        self.files: list[str] = []
        os.makedirs(out_dir, exist_ok=True)

    def path(self, name: str) -> str:
        p = os.path.join(self.out_dir, name)
        self.files.append(p)
        return p

    def write_rows(self, name: str, header: str, rows) -> str:
        p = self.path(name)
        with open(p, "w") as f:
            f.write(header + "\n")
            for row in rows:
                f.write(",".join(_fmt(v) if isinstance(v, float) else str(v)
                                 for v in row) + "\n")
        return p

    def cleanup(self) -> None:
        for p in self.files:
            if os.path.exists(p):
                os.remove(p)


def run_experiment(cfg: ExperimentConfig) -> dict:
    """Run one experiment and return the manifest (also written as JSON).

    Deterministic: the same config and seed produce byte-identical files.
    """
    cfg.validate()
    out = _Outputs(cfg.out_dir)
    runner = _RUNNERS[cfg.kind]
    try:
        extra = runner(cfg, out)
    except Exception:
        out.cleanup()
        raise
    manifest = {
        "version": __version__,
        "config": asdict(cfg),
        "files": [os.path.basename(p) for p in out.files],
    }
    manifest.update(extra or {})
    mpath = os.path.join(cfg.out_dir, f"{cfg.kind}_manifest.json")
    with open(mpath, "w") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write("\n")
    return manifest


def _sim_config(cfg: ExperimentConfig, seed: int, **over) -> SimConfig:
    return SimConfig(n=cfg.n, params=cfg.params(**over),
                     initial_infectives=cfg.initial_infectives,
                     mode=RewireMode(cfg.mode), seed=seed)


def _run_trajectory(cfg: ExperimentConfig, out: _Outputs) -> dict:
    seeds = replicate_seeds(cfg.seed, cfg.reps)
    p = cfg.params()
    eps0 = cfg.initial_infectives / cfg.n
    x0 = np.array([1.0 - eps0, eps0, p.mu * eps0 * (1.0 - eps0), 0.0])
    trajs = []
    t_max = 0.0
    for k, s in enumerate(seeds):
        _, traj = run(_sim_config(cfg, s))
        trajs.append(traj)
        t_max = max(t_max, traj.t[-1])
        traj.write_csv(out.path(f"sim_trajectory_{k:03d}.csv"))
    res = integrate_main(p, x0, t_max, dense_points=400)
    out.write_rows("ode_trajectory.csv", "t,s,i,i_e,w",
                   zip(res.t.tolist(), *[row.tolist() for row in res.y]))
    grid = np.linspace(0.0, t_max, 400)
    mean_i = np.zeros_like(grid)
    mean_s = np.zeros_like(grid)
    for traj in trajs:
        # hold the last value after a replicate's own absorption
        mean_i += np.interp(grid, traj.t, traj.i)
        mean_s += np.interp(grid, traj.t, traj.s)
    mean_i /= len(trajs)
    mean_s /= len(trajs)
    out.write_rows("mean_trajectory.csv", "t,s,i",
                   zip(grid.tolist(), mean_s.tolist(), mean_i.tolist()))
    return {"seeds": seeds}


def _theory_tau(p: Params, eps: float, susceptible_only: bool) -> float:
    lam_c = compute_lambda_c(p)
    if p.lam <= lam_c:
        return 0.0
    if susceptible_only:
        return solve_susonly_final(p).tau
    if p.gamma == 0.0:
        return solve_si_final(p)[0]
    return sir_final_size(p, eps=eps)


def _run_sweep(cfg: ExperimentConfig, out: _Outputs, susceptible_only: bool) -> dict:
    scatter = []
    curve = []
    all_seeds = {}
    mode = RewireMode.SUSCEPTIBLE_ONLY if susceptible_only else RewireMode(cfg.mode)
    for j, lam in enumerate(cfg.lambda_grid):
        p = cfg.params(lam=lam)
        curve.append((lam, _theory_tau(p, cfg.eps, susceptible_only)))
        seeds = replicate_seeds(cfg.seed + j, cfg.reps)
        all_seeds[_fmt(lam)] = seeds
        for k, s in enumerate(seeds):
            sc = SimConfig(n=cfg.n, params=p,
                           initial_infectives=cfg.initial_infectives,
                           mode=mode, seed=s)
            report, _ = run(sc)
            scatter.append((lam, k, report.final_fraction, int(report.major)))
    name = "susonly" if susceptible_only else "final_size"
    out.write_rows(f"{name}_scatter.csv", "lambda,rep,final_fraction,major",
                   scatter)
    out.write_rows(f"{name}_theory.csv", "lambda,tau", curve)
    return {"seeds": all_seeds}


def _run_final_size_sweep(cfg, out):
    return _run_sweep(cfg, out, susceptible_only=False)


def _run_susonly_sweep(cfg, out):
    return _run_sweep(cfg, out, susceptible_only=True)


def _run_phase_diagram(cfg: ExperimentConfig, out: _Outputs) -> dict:
    rows = []
    for mu in cfg.mu_grid:
        for alpha in cfg.alpha_grid:
            p = cfg.params(mu=mu, alpha=alpha)
            if mu <= 1.0 or (p.lam <= compute_lambda_c(p) if mu > 1 else True):
                tau, regime, mono = 0.0, Regime.SUBCRITICAL, Monotonicity.NA
            elif p.gamma == 0.0:
                tau = solve_si_final(p)[0]
                regime = (Regime.DISCONTINUOUS if si_discontinuity(mu, alpha)
                          else Regime.CONTINUOUS)
                mono = monotonicity_class(mu, alpha)
            else:
                tau = sir_final_size(p, eps=cfg.eps)
                verdict, _ = sir_discontinuity_bounds(p)
                regime = (Regime.DISCONTINUOUS if verdict == "discontinuous"
                          else Regime.CONTINUOUS)
                mono = Monotonicity.NA
            rows.append((mu, alpha, p.lam, p.omega, p.gamma, tau,
                         regime.value, mono.value))
    out.write_rows("phase_diagram.csv",
                   "mu,alpha,lambda,omega,gamma,tau,regime,monotonicity", rows)
    return {}


def _run_yd_compare(cfg: ExperimentConfig, out: _Outputs) -> dict:
    rows = []
    all_seeds = {}
    for j, omega in enumerate(cfg.omega_grid):
        p = cfg.params(omega=omega, gamma=0.0, alpha=1.0)
        tau = solve_si_final(p)[0] if compute_r0(p) > 1.0 else 0.0
        _, nu = yd_final_size(p.mu, p.lam, omega)
        seeds = replicate_seeds(cfg.seed + j, cfg.reps)
        all_seeds[_fmt(omega)] = seeds
        fracs = []
        for s in seeds:
            sc = SimConfig(n=cfg.n, params=p,
                           initial_infectives=cfg.initial_infectives,
                           mode=RewireMode(cfg.mode), seed=s)
            report, _ = run(sc)
            if report.major:
                fracs.append(report.final_fraction)
        mean = float(np.mean(fracs)) if fracs else float("nan")
        se = (float(np.std(fracs, ddof=1) / math.sqrt(len(fracs)))
              if len(fracs) > 1 else float("nan"))
        rows.append((omega, tau, nu, mean, se))
    out.write_rows("yd_compare.csv", "omega,tau_ours,nu_yd,sim_mean,sim_se", rows)
    return {"seeds": all_seeds}


def _run_oracle_validate(cfg: ExperimentConfig, out: _Outputs) -> dict:
    seeds_fast = replicate_seeds(cfg.seed, cfg.reps)
    seeds_naive = replicate_seeds(cfg.seed + 1, cfg.reps)
    rows = []
    p = cfg.params()
    for k in range(cfg.reps):
        fast_report, _ = run(_sim_config(cfg, seeds_fast[k]))
        naive_report = run_naive(cfg.n, p, mode=RewireMode(cfg.mode),
                                 initial_infectives=cfg.initial_infectives,
                                 seed=seeds_naive[k])
        rows.append((k, fast_report.final_fraction, int(fast_report.major),
                     naive_report.final_fraction, int(naive_report.major)))
    out.write_rows("oracle_validate.csv",
                   "rep,fast_final_fraction,fast_major,"
                   "naive_final_fraction,naive_major", rows)
    return {"seeds": {"fast": seeds_fast, "naive": seeds_naive}}


def _run_branching_sweep(cfg: ExperimentConfig, out: _Outputs) -> dict:
    rows = []
    for lam in cfg.lambda_grid:
        p = cfg.params(lam=lam)
        q = extinction_probability(p.mu, p.lam, p.gamma, p.omega)
        r = malthusian_rate(p.mu, p.lam, p.gamma, p.omega)
        rows.append((lam, q, r, compute_r0(p)))
    out.write_rows("branching_sweep.csv", "lambda,q_ext,r_malthus,r0", rows)
    return {}


_RUNNERS = {
    "trajectory": _run_trajectory,
    "final_size_sweep": _run_final_size_sweep,
    "phase_diagram": _run_phase_diagram,
    "susonly_sweep": _run_susonly_sweep,
    "yd_compare": _run_yd_compare,
    "oracle_validate": _run_oracle_validate,
    "branching_sweep": _run_branching_sweep,
}
