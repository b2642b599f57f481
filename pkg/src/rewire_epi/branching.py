"""Early-phase branching approximation of the epidemic.

An individual lives Exp(gamma), is born with Po(mu) edges, and each edge
independently transmits at rate lam or is lost at rate omega; death removes
all remaining edges.  Offspring are the transmissions made during life.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import roots_legendre


def malthusian_rate(mu: float, lam: float, gamma: float, omega: float) -> float:
    """Early exponential growth rate lam*(mu - 1) - gamma - omega."""
    return lam * (mu - 1.0) - gamma - omega


def extinction_probability(mu: float, lam: float, gamma: float, omega: float,
                           tol: float = 1e-12, max_iter: int = 10_000,
                           quad_order: int = 64) -> float:
    """Smallest fixed point q of the offspring generating function.

    With gamma > 0 the generating function is an integral over the
    individual's lifetime, evaluated by Gauss-Legendre quadrature after
    substituting u = exp(-gamma * t); gamma = 0 admits the closed Poisson
    form exp(mu * lam / (lam + omega) * (q - 1)).
    """
    if lam < 0 or omega < 0 or gamma < 0 or mu <= 0:
        raise ValueError("parameters must be non-negative with mu > 0")
    if lam == 0.0:
        return 1.0
    c = lam / (lam + omega)
    if gamma == 0.0:
        f = lambda q: math.exp(mu * c * (q - 1.0))
    else:
        nodes, weights = roots_legendre(quad_order)
        uu = 0.5 * (nodes + 1.0)  # map to (0, 1)
        ww = 0.5 * weights
        expo = (lam + omega) / gamma
        mean_edges = mu * c * (1.0 - uu ** expo)

        def f(q: float) -> float:
            return float(np.dot(ww, np.exp(mean_edges * (q - 1.0))))

    q = 0.0
    for _ in range(max_iter):
        q_next = f(q)
        if abs(q_next - q) < tol:
            return q_next
        q = q_next
    raise RuntimeError("fixed-point iteration did not converge")


def simulate_branching(mu: float, lam: float, gamma: float, omega: float,
                       seed: int = 0, max_births: int = 10_000) -> tuple[int, bool]:
    """Total progeny of one ancestor; returns (births, extinct).

    Truncated at max_births, in which case extinct is False.  Simulates
    offspring counts only; the timing of events does not affect progeny.
    """
    rng = np.random.default_rng(seed)
    births = 1
    pending = 1  # individuals whose offspring are not yet drawn
    c = lam / (lam + omega) if lam + omega > 0 else 0.0
    while pending > 0:
        pending -= 1
        degree = rng.poisson(mu)
        if gamma == 0.0:
            kids = rng.binomial(degree, c) if degree else 0
        else:
            # Each edge transmits iff its Exp(lam) clock beats both the
            # Exp(omega) drop clock and the Exp(gamma) lifetime.
            life = rng.exponential(1.0 / gamma)
            kids = 0
            for _ in range(degree):
                te = rng.exponential(1.0 / (lam + omega))
                if te < life and rng.random() < c:
                    kids += 1
        births += kids
        pending += kids
        if births >= max_births:
            return births, False
    return births, True
