"""Brute-force simulation on an explicitly sampled random graph.

Independent of the event-driven simulator in ctmc: here the whole graph is
materialized up front and every susceptible-infective edge is located by
scanning the edge list, so the two implementations share no mechanism
beyond the model definition.  Intended for cross-validation at small n.
"""

from __future__ import annotations

import math
from collections import deque

import numpy as np

from .ctmc import FinalSizeReport
from .params import Params, RewireMode, effective_mode

SUSCEPTIBLE, INFECTIVE, RECOVERED = 0, 1, 2


def sample_er_graph(n: int, mu: float, rng: np.random.Generator) -> np.ndarray:
    """Simple graph where each of the n(n-1)/2 pairs is an edge independently
    with probability mu/n.  Returns an (m, 2) array of endpoint pairs."""
    if not 0.0 <= mu / n <= 1.0:
        raise ValueError("mu/n must be a probability")
    iu, iv = np.triu_indices(n, k=1)
    mask = rng.random(iu.size) < mu / n
    return np.column_stack([iu[mask], iv[mask]]).astype(np.int64)


def component_sizes(n: int, edges: np.ndarray) -> list[int]:
    """Connected component sizes via breadth-first search."""
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(int(v))
        adj[v].append(int(u))
    seen = np.zeros(n, dtype=bool)
    sizes = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        size = 1
        q = deque([start])
        while q:
            x = q.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    size += 1
                    q.append(y)
        sizes.append(size)
    return sizes


def giant_component_fraction(n: int, edges: np.ndarray) -> float:
    return max(component_sizes(n, edges)) / n


def run_naive(n: int, params: Params, mode: RewireMode = RewireMode.UNIFORM_ALL,
              initial_infectives: int = 1, seed: int = 0,
              major_outbreak_threshold: int | None = None,
              max_events: int | None = None) -> FinalSizeReport:
    """Gillespie simulation on an explicit graph, to absorption.

    Absorption is no infective for SIR, no susceptible-infective edge for
    SI (gamma = 0).
    """
    if not 1 <= initial_infectives < n:
        raise ValueError("initial_infectives must be in [1, n)")
    rng = np.random.default_rng(seed)
    mode, p = effective_mode(mode, params)
    threshold = (major_outbreak_threshold if major_outbreak_threshold is not None
                 else math.ceil(math.log(n)))
    cap = max_events if max_events is not None else max(200_000, 100 * n)

    edges = sample_er_graph(n, p.mu, rng)
    m = len(edges)
    u = edges[:, 0].copy()
    v = edges[:, 1].copy()
    status = np.zeros(n, dtype=np.int8)
    initial = rng.choice(n, size=initial_infectives, replace=False)
    status[initial] = INFECTIVE
    n_i = initial_infectives
    events = 0
    truncated = False

    while True:
        si_mask = status[u[:m]] != status[v[:m]]
        si_mask &= (status[u[:m]] != RECOVERED) & (status[v[:m]] != RECOVERED)
        si_idx = np.flatnonzero(si_mask)
        n_si = si_idx.size
        rate = (p.lam + p.omega) * n_si + p.gamma * n_i
        done = (n_i == 0) if p.gamma > 0 else (n_si == 0)
        if done or rate <= 0.0:
            break
        if events >= cap:
            truncated = True
            break
        r = rng.random() * rate
        if r < p.lam * n_si:
            k = si_idx[rng.integers(n_si)]
            target = u[k] if status[u[k]] == SUSCEPTIBLE else v[k]
            status[target] = INFECTIVE
            n_i += 1
        elif r < (p.lam + p.omega) * n_si:
            k = si_idx[rng.integers(n_si)]
            keeper = u[k] if status[u[k]] == SUSCEPTIBLE else v[k]
            if rng.random() < p.alpha:
                newpart = _pick_partner(mode, status, n, int(keeper),
                                        int(u[k] + v[k] - keeper), rng)
                if newpart >= 0:
                    u[k] = keeper
                    v[k] = newpart
                # newpart < 0: no eligible target, edge retained
            else:
                m -= 1
                u[k] = u[m]
                v[k] = v[m]
        else:
            infectives = np.flatnonzero(status == INFECTIVE)
            status[infectives[rng.integers(n_i)]] = RECOVERED
            n_i -= 1
        events += 1

    final = int(np.count_nonzero(status != SUSCEPTIBLE))
    return FinalSizeReport(
        final_size=final,
        final_fraction=final / n,
        major=final >= threshold,
        duration_events=events,
        seed=seed,
        truncated=truncated,
    )


def _pick_partner(mode: RewireMode, status: np.ndarray, n: int, keeper: int,
                  old: int, rng: np.random.Generator) -> int:
    """New partner for a rewired edge, or -1 if the edge should be retained."""
    if mode is RewireMode.UNIFORM_ALL:
        k = int(rng.integers(n - 2))
        for excl in sorted((keeper, old)):
            if k >= excl:
                k += 1
        return k
    if mode is RewireMode.SUSCEPTIBLE_ONLY:
        pool = np.flatnonzero(status == SUSCEPTIBLE)
    else:  # NON_INFECTIOUS
        pool = np.flatnonzero(status != INFECTIVE)
    pool = pool[pool != keeper]
    if pool.size == 0:
        return -1
    return int(pool[rng.integers(pool.size)])
