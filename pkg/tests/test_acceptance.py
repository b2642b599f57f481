"""End-to-end acceptance checks.

Each test exercises one headline claim at desk scale (n in the low
thousands, hundreds of replicates) and prints a single pass/fail line so a
full run reads as a scorecard.  Stochastic checks use frozen seeds.
"""

import math
import time

import numpy as np
import pytest
from scipy.stats import ks_2samp

from rewire_epi.ctmc import SimConfig, replicate_seeds, run, run_until_majors
from rewire_epi.finalsize import (
    compute_constants,
    si_discontinuity,
    solve_si_final,
    solve_susonly_final,
    tau0,
    yd_final_size,
)
from rewire_epi.ode import (
    TransformedSystem,
    closed_form_si,
    integrate,
    integrate_main,
    main_to_pair,
    pair_to_main,
    rhs_pair,
    rhs_transformed,
    sir_final_size,
)
from rewire_epi.oracle import run_naive
from rewire_epi.params import Params, RewireMode

FIG1 = Params(mu=5.0, lam=1.5, gamma=1.0, omega=4.0, alpha=1.0)


def _report(num, checks):
    """Print one scorecard line, then assert every named sub-check."""
    failed = [name for name, ok in checks if not ok]
    line = "PASS" if not failed else "FAIL: " + ", ".join(failed)
    print(f"criterion {num}: {line}")
    assert not failed, f"criterion {num} failed sub-checks: {failed}"


def _major_stats(p, n, seed, n_major, mode=RewireMode.UNIFORM_ALL,
                 initial=1):
    cfg = SimConfig(n=n, params=p, initial_infectives=initial, mode=mode,
                    seed=seed, major_outbreak_threshold=int(0.6 * n))
    return run_until_majors(cfg, n_major)


def test_criterion_1_reference_constants():
    t0 = time.perf_counter()
    c = compute_constants()
    elapsed = time.perf_counter() - t0
    tol = 5e-4
    _report(1, [
        ("alpha_star", abs(c.alpha_star - 0.8209) < tol),
        ("mu_hat_alpha_star", abs(c.mu_hat_of_alpha_star - 3.3482) < tol),
        ("tau_star", abs(c.tau_star - 0.8764) < tol),
        ("mu_hat_star_1", abs(c.mu_hat_star_1 - 1.7564) < tol),
        ("theta_star", abs(c.theta_star - 0.4614) < tol),
        ("runtime", elapsed < 1.0),
    ])


# shared by criteria 2 and 3: major-outbreak means on the common SI setup
_SI_BASE = dict(mu=2.0, lam=1.0, gamma=0.0, alpha=1.0)


@pytest.fixture(scope="module")
def si_major_means():
    out = {}
    for j, omega in enumerate((0.2, 0.4, 0.5, 0.6, 0.8)):
        p = Params(omega=omega, **_SI_BASE)
        summary = _major_stats(p, n=5000, seed=42 + j, n_major=300)
        out[omega] = summary.major_fraction_mean
    return out


def test_criterion_2_si_final_size_lln(si_major_means):
    checks = []
    for omega in (0.2, 0.4, 0.6, 0.8):
        p = Params(omega=omega, **_SI_BASE)
        tau, _ = solve_si_final(p)
        diff = abs(si_major_means[omega] - tau)
        checks.append((f"omega={omega} |mean-tau|={diff:.4f}", diff <= 0.02))
    _report(2, checks)


def test_criterion_3_competing_prediction_separation(si_major_means):
    p = Params(omega=0.5, **_SI_BASE)
    tau, _ = solve_si_final(p)
    _, nu = yd_final_size(p.mu, p.lam, p.omega)
    mean = si_major_means[0.5]
    _report(3, [
        ("predictions separated", abs(nu - tau) > 1e-3),
        ("simulation closer to tau", abs(mean - tau) < abs(mean - nu)),
    ])


def test_criterion_4_temporal_law_of_large_numbers():
    n, reps, i0 = 5000, 100, 50
    eps0 = i0 / n
    x0 = np.array([1 - eps0, eps0, FIG1.mu * eps0 * (1 - eps0), 0.0])
    res = integrate_main(FIG1, x0, 12.0, dense_points=400)
    mean_i = np.zeros_like(res.t)
    takeoffs = 0
    for s in replicate_seeds(123, reps):
        cfg = SimConfig(n=n, params=FIG1, initial_infectives=i0, seed=s,
                        major_outbreak_threshold=int(0.6 * n))
        report, traj = run(cfg)
        takeoffs += report.major
        mean_i += np.interp(res.t, traj.t, traj.i)
    mean_i /= reps
    sup = float(np.abs(mean_i - res.y[1]).max())
    _report(4, [
        (f"sup|mean i - ode i|={sup:.4f}", sup <= 0.03),
        (f"takeoffs={takeoffs}/{reps}", takeoffs >= 95),
    ])


def test_criterion_5_sir_final_size_conjecture():
    base = dict(mu=5.0, gamma=1.0, omega=4.0, alpha=1.0)
    n, reps = 2000, 200
    checks = []
    for j, lam in enumerate((1.0, 1.3, 1.6, 2.0)):
        p = Params(lam=lam, **base)
        majors = []
        for s in replicate_seeds(12 + j, reps):
            rep_cfg = SimConfig(n=n, params=p, seed=s,
                                major_outbreak_threshold=int(0.6 * n))
            report, _ = run(rep_cfg)
            if report.major:
                majors.append(report.final_fraction)
        freq = len(majors) / reps
        if lam == 1.0:
            checks.append((f"lam=1.0 major freq={freq:.3f}", freq <= 0.05))
            continue
        tau = sir_final_size(p)
        mean = float(np.mean(majors))
        checks.append((f"lam={lam} |mean-tau|={abs(mean - tau):.4f}",
                       abs(mean - tau) <= 0.04))
        if lam == 1.3:
            checks.append((f"lam=1.3 mean={mean:.3f} jump", mean > 0.1))
    _report(5, checks)


def test_criterion_6_susceptible_only_jump_to_one():
    base = dict(mu=2.5, gamma=1.0, omega=10.0, alpha=1.0)
    n = 2000
    checks = []
    for j, lam in enumerate((8.0, 12.0)):
        p = Params(lam=lam, **base)
        majors = []
        for s in replicate_seeds(11 + j, 300):
            cfg = SimConfig(n=n, params=p, seed=s,
                            mode=RewireMode.SUSCEPTIBLE_ONLY,
                            major_outbreak_threshold=int(0.6 * n))
            report, _ = run(cfg)
            if report.major:
                majors.append(report.final_fraction)
        mean = float(np.mean(majors))
        if lam == 8.0:
            checks.append((f"lam=8 mean={mean:.3f}", mean >= 0.97))
        else:
            tau = solve_susonly_final(p).tau
            checks.append((f"lam=12 |mean-groot|={abs(mean - tau):.4f}",
                           abs(mean - tau) <= 0.03))
    _report(6, checks)


def test_criterion_7_fast_simulator_matches_graph_oracle():
    n, reps, i0 = 300, 2000, 3
    fast = []
    for s in replicate_seeds(77, reps):
        cfg = SimConfig(n=n, params=FIG1, initial_infectives=i0, seed=s)
        report, _ = run(cfg)
        fast.append(report.final_fraction)
    naive = []
    for s in replicate_seeds(78, reps):
        report = run_naive(n, FIG1, initial_infectives=i0, seed=s)
        naive.append(report.final_fraction)
    fast, naive = np.array(fast), np.array(naive)
    p_value = ks_2samp(fast, naive).pvalue
    m_fast = fast[fast >= 0.6].mean()
    m_naive = naive[naive >= 0.6].mean()
    diff = abs(m_fast - m_naive)
    _report(7, [
        (f"KS p={p_value:.3f}", p_value > 0.01),
        (f"major-conditional diff={diff:.4f}", diff < 0.03),
    ])


def test_criterion_8_closed_form_and_pair_equivalence():
    t0 = time.perf_counter()
    worst = 0.0
    for mu in (1.5, 2.0, 5.0):
        for lam in (0.7, 1.5):
            for omega in (0.3, 1.0):
                for alpha in (0.4, 1.0):
                    for eps in (1e-3, 0.05):
                        p = Params(mu=mu, lam=lam, gamma=0.0, omega=omega,
                                   alpha=alpha)
                        x0 = np.array([1 - eps, mu * eps * (1 - eps), 0.0])
                        res = integrate(
                            lambda t, y: rhs_transformed(
                                TransformedSystem.SI_A, t, y, p),
                            x0, 1 - eps, ie_floor=0.0, ie_index=1,
                            dense_points=50)
                        cf = closed_form_si(res.t, p, eps)
                        worst = max(worst, float(np.abs(res.y - cf).max()))
    p = FIG1
    y0 = np.array([0.99, 0.01, p.mu * 0.01 * 0.99, 0.0])
    res_main = integrate_main(p, y0, 5.0, dense_points=200)
    res_pair = integrate(lambda t, y: rhs_pair(t, y, p),
                         main_to_pair(y0, p), 5.0, dense_points=200)
    mapped = np.column_stack([pair_to_main(res_pair.y[:, k], p)
                              for k in range(res_pair.y.shape[1])])
    pair_diff = float(np.abs(mapped - res_main.y).max())
    elapsed = time.perf_counter() - t0
    _report(8, [
        (f"closed-form sup err={worst:.2e}", worst < 1e-6),
        (f"pair-map sup err={pair_diff:.2e}", pair_diff < 1e-6),
        (f"runtime={elapsed:.1f}s", elapsed < 10.0),
    ])


def test_criterion_9_discontinuity_boundary():
    checks = []
    step = 1e-3
    for alpha in (0.5, 0.8, 1.0):
        mu_b = 3 * alpha / (3 * alpha - 1)
        grid = np.arange(mu_b - 0.05, mu_b + 0.05, step)
        flags = [si_discontinuity(m, alpha) for m in grid]
        flip = next(k for k in range(1, len(flags))
                    if flags[k] and not flags[k - 1])
        located = 0.5 * (grid[flip - 1] + grid[flip])
        below = tau0(mu_b - step, alpha)
        above = tau0(mu_b + step, alpha)
        checks.append((f"alpha={alpha} boundary at {located:.4f}",
                       abs(located - mu_b) <= 1.5 * step))
        checks.append((f"alpha={alpha} tau0 below={below:.2e}",
                       below < 1e-3))
        checks.append((f"alpha={alpha} tau0 above={above:.2e}",
                       above > 1e-3))
    _report(9, checks)
