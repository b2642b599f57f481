import math

import numpy as np
import pytest

from rewire_epi.branching import (
    extinction_probability,
    malthusian_rate,
    simulate_branching,
)
from rewire_epi.params import Params, compute_r0


def test_malthusian_sign_matches_r0():
    for mu, lam, gamma, omega in [(5, 1.5, 1, 4), (2, 1, 0, 0.4),
                                  (2, 0.5, 1, 0.5), (5, 1.0, 1, 4)]:
        r = malthusian_rate(mu, lam, gamma, omega)
        r0 = compute_r0(Params(mu=mu, lam=lam, gamma=gamma, omega=omega))
        assert (r > 0) == (r0 > 1)


def test_extinction_certain_when_subcritical():
    assert extinction_probability(5, 1.0, 1.0, 4.0) == pytest.approx(1.0, abs=1e-9)
    assert extinction_probability(2, 0.0, 1.0, 0.0) == 1.0


def test_si_closed_form_fixed_point():
    mu, lam, omega = 2.0, 1.0, 0.4
    q = extinction_probability(mu, lam, 0.0, omega)
    c = lam / (lam + omega)
    assert q == pytest.approx(math.exp(mu * c * (q - 1.0)), abs=1e-10)
    assert 0 < q < 1


def test_gamma_limit_consistency():
    """Vanishing recovery reproduces the closed SI extinction probability."""
    q_si = extinction_probability(2.0, 1.0, 0.0, 0.4)
    q_small = extinction_probability(2.0, 1.0, 1e-6, 0.4, quad_order=200)
    assert q_small == pytest.approx(q_si, abs=1e-3)


def test_no_rewiring_reduces_to_sir_branching():
    # with omega=0 and gamma>0 the offspring law is mixed Poisson over the
    # lifetime; fixed point of the classical integral equation
    mu, lam, gamma = 5.0, 1.5, 1.0
    q = extinction_probability(mu, lam, gamma, 0.0)
    assert 0 < q < 1
    # survival probability grows with lam
    q2 = extinction_probability(mu, 2.5, gamma, 0.0)
    assert q2 < q


def test_extinction_monotone_in_omega():
    qs = [extinction_probability(5.0, 1.5, 1.0, om) for om in (0.0, 1.0, 2.0, 4.0)]
    assert all(a < b for a, b in zip(qs, qs[1:]))


def test_simulation_agrees_with_fixed_point():
    mu, lam, gamma, omega = 5.0, 1.5, 1.0, 4.0
    q = extinction_probability(mu, lam, gamma, omega)
    extinct = 0
    reps = 2000
    for seed in range(reps):
        _, died = simulate_branching(mu, lam, gamma, omega, seed=seed,
                                     max_births=2000)
        extinct += died
    se = math.sqrt(q * (1 - q) / reps)
    assert abs(extinct / reps - q) < 4 * se + 0.01


def test_simulation_si_agrees_with_fixed_point():
    mu, lam, omega = 2.0, 1.0, 0.4
    q = extinction_probability(mu, lam, 0.0, omega)
    extinct = sum(simulate_branching(mu, lam, 0.0, omega, seed=s,
                                     max_births=2000)[1]
                  for s in range(2000))
    assert abs(extinct / 2000 - q) < 0.04


def test_invalid_parameters():
    with pytest.raises(ValueError):
        extinction_probability(-1.0, 1.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        extinction_probability(2.0, -1.0, 0.0, 0.0)


def test_takeoff_probability_matches_epidemic_simulation():
    """1 - q approximates the major-outbreak probability of the full model
    with one initial infective."""
    from rewire_epi.ctmc import SimConfig, replicate_seeds, run
    p = Params(mu=5.0, lam=1.5, gamma=1.0, omega=4.0, alpha=1.0)
    q = extinction_probability(5.0, 1.5, 1.0, 4.0)
    majors = 0
    reps = 400
    for s in replicate_seeds(31, reps):
        r, _ = run(SimConfig(n=1000, params=p, seed=s,
                             major_outbreak_threshold=200))
        majors += r.major
    assert abs(majors / reps - (1.0 - q)) < 0.05
