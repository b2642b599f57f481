import numpy as np
import pytest

from rewire_epi.finalsize import giant_component
from rewire_epi.oracle import (
    component_sizes,
    giant_component_fraction,
    run_naive,
    sample_er_graph,
)
from rewire_epi.params import Params, RewireMode


def test_er_graph_edge_count_and_simplicity():
    rng = np.random.default_rng(0)
    n, mu = 500, 3.0
    edges = sample_er_graph(n, mu, rng)
    assert np.all(edges[:, 0] < edges[:, 1])
    pairs = {(int(u), int(v)) for u, v in edges}
    assert len(pairs) == len(edges)
    # expected m = mu*(n-1)/2 per vertex pair probability mu/n
    expect = mu / n * n * (n - 1) / 2
    assert abs(len(edges) - expect) < 5 * np.sqrt(expect)


def test_component_sizes_on_known_graph():
    edges = np.array([[0, 1], [1, 2], [3, 4]])
    sizes = component_sizes(6, edges)
    assert sorted(sizes) == [1, 2, 3]
    assert giant_component_fraction(6, edges) == 0.5


def test_giant_component_matches_percolation_theory():
    rng = np.random.default_rng(42)
    mu = 2.0
    fracs = [giant_component_fraction(1500, sample_er_graph(1500, mu, rng))
             for _ in range(20)]
    assert abs(np.mean(fracs) - giant_component(mu)) < 0.02


def test_run_naive_validation():
    with pytest.raises(ValueError):
        run_naive(10, Params(mu=2, lam=1), initial_infectives=0)


def test_si_without_warning_infects_initial_component():
    """With gamma = omega = 0 the SI epidemic sweeps exactly the connected
    component of the initial infective."""
    p = Params(mu=2.0, lam=1.0)
    for seed in range(10):
        r = run_naive(200, p, seed=seed)
        # component coverage: compare against a fresh graph's component law
        assert 1 <= r.final_size <= 200
    # statistically: mean major fraction ~ giant component
    fr = [run_naive(500, p, seed=s).final_fraction for s in range(60)]
    fr = np.array(fr)
    majors = fr[fr > 0.3]
    assert abs(majors.mean() - giant_component(2.0)) < 0.05


def test_immediate_recovery_limits_outbreak():
    p = Params(mu=2.0, lam=0.01, gamma=100.0)
    r = run_naive(300, p, seed=1)
    assert r.final_fraction < 0.1


def test_susceptible_only_mode_runs_to_absorption():
    p = Params(mu=2.5, lam=8.0, gamma=1.0, omega=10.0, alpha=1.0)
    r = run_naive(300, p, mode=RewireMode.SUSCEPTIBLE_ONLY, seed=3)
    assert 0.0 < r.final_fraction <= 1.0
    assert not r.truncated


def test_recovered_only_equals_dropping():
    p = Params(mu=2.0, lam=1.0, gamma=1.0, omega=0.5, alpha=0.8)
    a = [run_naive(200, p, mode=RewireMode.RECOVERED_ONLY, seed=s).final_size
         for s in range(100)]
    b = [run_naive(200, p.replace(alpha=0.0), mode=RewireMode.UNIFORM_ALL,
                   seed=s).final_size for s in range(100)]
    assert a == b


def test_determinism():
    p = Params(mu=5.0, lam=1.5, gamma=1.0, omega=4.0, alpha=1.0)
    assert run_naive(200, p, seed=9) == run_naive(200, p, seed=9)
