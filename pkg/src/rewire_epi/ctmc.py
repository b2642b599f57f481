"""Exact event-driven simulation of the epidemic without materializing the graph.

Only infectives and their live infectious edges are represented, together
with the pool of rewired susceptible-susceptible edges.  The per-infective
live-edge counts form the state's multiset; susceptibles are a single count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .params import Params, RewireMode, effective_mode


class AbsorbedError(RuntimeError):
    """step() was called on a state with zero total event rate."""


class EventKind(Enum):
    INFECTION = "infection"
    RECOVERY = "recovery"
    WARNING = "warning"


@dataclass
class SimConfig:
    n: int
    params: Params
    initial_infectives: int = 1
    mode: RewireMode = RewireMode.UNIFORM_ALL
    seed: int = 0
    major_outbreak_threshold: int | None = None  # default ceil(log n)
    max_events: int | None = None
    sample_dt: float | None = None  # None: every event if n <= 1000 else 0.01/max rate

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError("n must be >= 3")
        if not 1 <= self.initial_infectives < self.n:
            raise ValueError("initial_infectives must be in [1, n)")
        if self.params.mu >= self.n:
            raise ValueError("mu must be < n for the edge intensity to be finite")

    @property
    def threshold(self) -> int:
        if self.major_outbreak_threshold is not None:
            return self.major_outbreak_threshold
        return math.ceil(math.log(self.n))

    @property
    def event_cap(self) -> int:
        if self.max_events is not None:
            return self.max_events
        return max(200_000, 100 * self.n)

    @property
    def mu_n(self) -> float:
        return -self.n * math.log1p(-self.params.mu / self.n)


@dataclass
class SimState:
    """Aggregate CTMC state.

    edges holds the live-edge count of each current infective; only the
    first n_active entries are meaningful.
    """

    n: int
    s: int
    w: int
    edges: np.ndarray
    n_active: int
    i_e: int
    t: float = 0.0
    cum_infections: int = 0
    events: int = 0

    @property
    def i(self) -> int:
        return self.n_active

    @property
    def recovered(self) -> int:
        return self.n - self.s - self.n_active


@dataclass
class FinalSizeReport:
    final_size: int
    final_fraction: float
    major: bool
    duration_events: int
    seed: int
    truncated: bool = False


@dataclass
class Trajectory:
    """Time series of scaled state (fractions of n)."""

    t: np.ndarray
    s: np.ndarray
    i: np.ndarray
    i_e: np.ndarray
    w: np.ndarray

    HEADER = "t,s,i,i_e,w"

    def write_csv(self, path) -> None:
        data = np.column_stack([self.t, self.s, self.i, self.i_e, self.w])
        np.savetxt(path, data, delimiter=",", header=self.HEADER,
                   comments="", fmt="%.9g")


def init_state(cfg: SimConfig, rng: np.random.Generator) -> SimState:
    """All-susceptible start plus the configured initial infectives, each
    assigned an independent Po(mu_n * s / n) live-edge count."""
    n, i0 = cfg.n, cfg.initial_infectives
    s = n - i0
    edges = np.zeros(n, dtype=np.int64)
    edges[:i0] = rng.poisson(cfg.mu_n * s / n, size=i0)
    return SimState(n=n, s=s, w=0, edges=edges, n_active=i0,
                    i_e=int(edges[:i0].sum()), cum_infections=i0)


def _pick_edge_owner(state: SimState, rng: np.random.Generator) -> int:
    """Index of an infective chosen proportionally to its live-edge count."""
    cum = np.cumsum(state.edges[:state.n_active])
    r = rng.integers(1, state.i_e + 1)
    return int(np.searchsorted(cum, r))


def _apply_infection(state: SimState, cfg: SimConfig, rng: np.random.Generator) -> None:
    p = cfg.params
    s_pre = state.s
    j = _pick_edge_owner(state, rng)
    state.edges[j] -= 1
    state.i_e -= 1
    # New infective's edges, evaluated after it leaves the susceptible pool.
    x_new = rng.poisson(cfg.mu_n * (s_pre - 1) / cfg.n)
    y_acq = rng.binomial(state.w, min(1.0, 2.0 / s_pre)) if state.w > 0 else 0
    state.w -= y_acq
    # Every other pre-existing live edge dies independently w.p. 1/s_pre.
    if state.i_e > 0:
        drops = rng.binomial(state.edges[:state.n_active], min(1.0, 1.0 / s_pre))
        state.edges[:state.n_active] -= drops
        state.i_e -= int(drops.sum())
    state.edges[state.n_active] = x_new + y_acq
    state.n_active += 1
    state.i_e += x_new + y_acq
    state.s = s_pre - 1
    state.cum_infections += 1
    if state.s == 0:
        # No susceptibles remain: all live edges are dead.
        state.edges[:state.n_active] = 0
        state.i_e = 0
        state.w = 0


def _apply_recovery(state: SimState, cfg: SimConfig, rng: np.random.Generator) -> None:
    j = int(rng.integers(state.n_active))
    state.i_e -= int(state.edges[j])
    state.n_active -= 1
    state.edges[j] = state.edges[state.n_active]
    state.edges[state.n_active] = 0


def _apply_warning(state: SimState, cfg: SimConfig, rng: np.random.Generator,
                   mode: RewireMode, p: Params) -> None:
    n = state.n
    j = _pick_edge_owner(state, rng)
    state.edges[j] -= 1
    state.i_e -= 1
    if rng.random() >= p.alpha:
        return  # dropped
    if mode is RewireMode.UNIFORM_ALL:
        u = rng.random() * (n - 2)
        if u < state.s - 1:
            state.w += 1
        elif u < state.s - 1 + state.n_active - 1:
            # Moves to a uniformly chosen *other* infective.
            k = int(rng.integers(state.n_active - 1))
            if k >= j:
                k += 1
            state.edges[k] += 1
            state.i_e += 1
        # else: rewired to a recovered individual; edge dies
    elif mode is RewireMode.SUSCEPTIBLE_ONLY:
        if state.s >= 2:
            state.w += 1
        else:
            state.edges[j] += 1  # no other susceptible: edge retained
            state.i_e += 1
    elif mode is RewireMode.NON_INFECTIOUS:
        pool = (state.s - 1) + state.recovered
        if pool <= 0:
            state.edges[j] += 1  # no non-infectious target: edge retained
            state.i_e += 1
        elif rng.random() * pool < state.s - 1:
            state.w += 1
        # else: recovered target; edge dies
    else:  # pragma: no cover - RECOVERED_ONLY is mapped before simulation
        raise AssertionError(mode)


def step(state: SimState, cfg: SimConfig,
         rng: np.random.Generator) -> tuple[SimState, EventKind]:
    """Apply one Gillespie event in place and return the state and event kind."""
    mode, p = effective_mode(cfg.mode, cfg.params)
    rate_inf = p.lam * state.i_e
    rate_rec = p.gamma * state.n_active
    rate_warn = p.omega * state.i_e
    total = rate_inf + rate_rec + rate_warn
    if total <= 0.0:
        raise AbsorbedError("zero total event rate: chain is absorbed")
    state.t += rng.exponential(1.0 / total)
    u = rng.random() * total
    if u < rate_inf:
        _apply_infection(state, cfg, rng)
        kind = EventKind.INFECTION
    elif u < rate_inf + rate_rec:
        _apply_recovery(state, cfg, rng)
        kind = EventKind.RECOVERY
    else:
        _apply_warning(state, cfg, rng, mode, p)
        kind = EventKind.WARNING
    state.events += 1
    return state, kind


def _default_sample_dt(cfg: SimConfig) -> float | None:
    if cfg.sample_dt is not None:
        return cfg.sample_dt
    if cfg.n <= 1000:
        return None  # record every event
    p = cfg.params
    rate = max(p.gamma, p.lam, p.omega)
    return 0.01 / rate if rate > 0 else None


class _Recorder:
    def __init__(self, cfg: SimConfig):
        self.dt = _default_sample_dt(cfg)
        self.n = cfg.n
        self.rows: list[tuple[float, int, int, int, int]] = []
        self.next_t = 0.0

    def record(self, state: SimState, force: bool = False) -> None:
        if not force and self.dt is not None and state.t < self.next_t:
            return
        self.rows.append((state.t, state.s, state.i, state.i_e, state.w))
        if self.dt is not None:
            while self.next_t <= state.t:
                self.next_t += self.dt

    def trajectory(self) -> Trajectory:
        arr = np.asarray(self.rows, dtype=float)
        n = float(self.n)
        return Trajectory(t=arr[:, 0], s=arr[:, 1] / n, i=arr[:, 2] / n,
                          i_e=arr[:, 3] / n, w=arr[:, 4] / n)


def _absorbed(state: SimState, si: bool) -> bool:
    return state.i_e == 0 if si else state.n_active == 0


def run(cfg: SimConfig,
        rng: np.random.Generator | None = None) -> tuple[FinalSizeReport, Trajectory]:
    """Simulate to absorption (SIR: no infective; SI: no infectious edge)."""
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    mode, p = effective_mode(cfg.mode, cfg.params)
    if p.gamma == 0.0:
        return _run_si_fast(cfg, rng, mode, p)
    state = init_state(cfg, rng)
    rec = _Recorder(cfg)
    rec.record(state, force=True)
    truncated = False
    cap = cfg.event_cap
    while not _absorbed(state, si=False):
        if state.events >= cap:
            truncated = True
            break
        step(state, cfg, rng)
        rec.record(state)
    rec.record(state, force=True)
    report = FinalSizeReport(
        final_size=state.cum_infections,
        final_fraction=state.cum_infections / cfg.n,
        major=state.cum_infections >= cfg.threshold,
        duration_events=state.events,
        seed=cfg.seed,
        truncated=truncated,
    )
    return report, rec.trajectory()


def _run_si_fast(cfg: SimConfig, rng: np.random.Generator, mode: RewireMode,
                 p: Params) -> tuple[FinalSizeReport, Trajectory]:
    """SI (gamma = 0) loop over the aggregate (s, i, i_e, w) only.

    Without recovery no event depends on how live edges are partitioned
    among infectives, so the aggregate is itself Markov and the multiset
    can be skipped.
    """
    n = cfg.n
    mu_n = cfg.mu_n
    s = n - cfg.initial_infectives
    i = cfg.initial_infectives
    ie = int(rng.poisson(mu_n * s / n, size=i).sum())
    w = 0
    t = 0.0
    events = 0
    cap = cfg.event_cap
    lam, omega, alpha = p.lam, p.omega, p.alpha
    p_inf = lam / (lam + omega) if lam + omega > 0 else 0.0
    rate_per_edge = lam + omega
    rec = _Recorder(cfg)
    rec.rows.append((t, s, i, ie, w))
    truncated = False

    while ie > 0:
        if events >= cap:
            truncated = True
            break
        t += rng.exponential(1.0 / (rate_per_edge * ie))
        if rng.random() < p_inf:
            s_pre = s
            ie -= 1
            x_new = rng.poisson(mu_n * (s_pre - 1) / n)
            y_acq = rng.binomial(w, min(1.0, 2.0 / s_pre)) if w > 0 else 0
            w -= y_acq
            if ie > 0:
                ie -= rng.binomial(ie, min(1.0, 1.0 / s_pre))
            ie += x_new + y_acq
            s -= 1
            i += 1
            if s == 0:
                ie = 0
                w = 0
        else:
            ie -= 1
            if rng.random() < alpha:
                if mode is RewireMode.UNIFORM_ALL:
                    u = rng.random() * (n - 2)
                    if u < s - 1:
                        w += 1
                    elif u < s - 1 + i - 1:
                        ie += 1  # moved to another infective
                else:  # SUSCEPTIBLE_ONLY / NON_INFECTIOUS coincide when gamma=0
                    if s >= 2:
                        w += 1
                    else:
                        ie += 1  # retained
        events += 1
        if rec.dt is None or t >= rec.next_t:
            rec.rows.append((t, s, i, ie, w))
            if rec.dt is not None:
                while rec.next_t <= t:
                    rec.next_t += rec.dt

    rec.rows.append((t, s, i, ie, w))
    cum = n - s
    report = FinalSizeReport(
        final_size=cum,
        final_fraction=cum / n,
        major=cum >= cfg.threshold,
        duration_events=events,
        seed=cfg.seed,
        truncated=truncated,
    )
    return report, rec.trajectory()


@dataclass
class ReplicateSummary:
    reports: list[FinalSizeReport]
    major_fraction_mean: float
    major_fraction_var: float
    major_probability: float
    n_major: int

    HEADER = "rep,seed,final_size,final_fraction,major,truncated"

    def write_csv(self, path) -> None:
        with open(path, "w") as f:
            f.write(self.HEADER + "\n")
            for k, r in enumerate(self.reports):
                f.write(f"{k},{r.seed},{r.final_size},{r.final_fraction:.9g},"
                        f"{int(r.major)},{int(r.truncated)}\n")


def replicate_seeds(seed: int, reps: int) -> list[int]:
    ss = np.random.SeedSequence(seed)
    return [int(s.generate_state(1)[0]) for s in ss.spawn(reps)]


def run_replicates(cfg: SimConfig, reps: int,
                   collect_trajectories: bool = False
                   ) -> ReplicateSummary | tuple[ReplicateSummary, list[Trajectory]]:
    """Independent seeded replicates with summary statistics conditioned on
    a major outbreak."""
    if reps < 1:
        raise ValueError("reps must be >= 1")
    seeds = replicate_seeds(cfg.seed, reps)
    reports: list[FinalSizeReport] = []
    trajs: list[Trajectory] = []
    for s in seeds:
        rep_cfg = SimConfig(n=cfg.n, params=cfg.params,
                            initial_infectives=cfg.initial_infectives,
                            mode=cfg.mode, seed=s,
                            major_outbreak_threshold=cfg.major_outbreak_threshold,
                            max_events=cfg.max_events, sample_dt=cfg.sample_dt)
        report, traj = run(rep_cfg)
        reports.append(report)
        if collect_trajectories:
            trajs.append(traj)
    majors = [r.final_fraction for r in reports if r.major]
    summary = ReplicateSummary(
        reports=reports,
        major_fraction_mean=float(np.mean(majors)) if majors else float("nan"),
        major_fraction_var=float(np.var(majors, ddof=1)) if len(majors) > 1 else 0.0,
        major_probability=len(majors) / reps,
        n_major=len(majors),
    )
    if collect_trajectories:
        return summary, trajs
    return summary


def run_until_majors(cfg: SimConfig, n_major: int, max_attempts: int = 1_000_000
                     ) -> ReplicateSummary:
    """Keep launching fresh replicates until n_major of them are major."""
    ss = np.random.SeedSequence(cfg.seed)
    reports: list[FinalSizeReport] = []
    majors: list[float] = []
    attempts = 0
    while len(majors) < n_major:
        if attempts >= max_attempts:
            raise RuntimeError("exceeded max_attempts before reaching n_major")
        seed = int(ss.spawn(1)[0].generate_state(1)[0])
        rep_cfg = SimConfig(n=cfg.n, params=cfg.params,
                            initial_infectives=cfg.initial_infectives,
                            mode=cfg.mode, seed=seed,
                            major_outbreak_threshold=cfg.major_outbreak_threshold,
                            max_events=cfg.max_events, sample_dt=cfg.sample_dt)
        report, _ = run(rep_cfg)
        reports.append(report)
        if report.major:
            majors.append(report.final_fraction)
        attempts += 1
    return ReplicateSummary(
        reports=reports,
        major_fraction_mean=float(np.mean(majors)),
        major_fraction_var=float(np.var(majors, ddof=1)) if len(majors) > 1 else 0.0,
        major_probability=len(majors) / attempts,
        n_major=len(majors),
    )
