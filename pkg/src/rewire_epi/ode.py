"""Deterministic (large-n) limits of the epidemic.

Four state functions are tracked as fractions of n: susceptibles s,
infectives i, infectious edges i_E (susceptible-infective edges per
individual) and rewired susceptible-susceptible edges w.  Alongside the
plain system there are time-transformed variants obtained by dividing
through by lam * i_E, so that s decreases at unit rate and the epidemic
maps onto a fixed interval; these include comparison systems whose
solutions bound the original one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import solve_ivp

from .params import Params, edge_ratio_constant


class TransformedSystem(Enum):
    SI_A = "si_a"              # gamma = 0, exact warning factor 1-alpha+alpha*s
    SIR_B = "sir_b"            # warning factor 1-alpha+alpha*(1-i)
    SUSONLY_C = "susonly_c"    # rewiring only to susceptibles
    LOWER_BL = "lower_bl"      # warning factor 1 (edge always lost)
    UPPER_BU = "upper_bu"      # warning factor 1-alpha+alpha*s
    UPPER_BU1 = "upper_bu1"    # warning factor 1-alpha+alpha*(1-L'*i_E)


def rhs_main(t: float, y: np.ndarray, p: Params) -> np.ndarray:
    """Mean-field system for uniform rewiring: y = (s, i, i_E, w)."""
    s, i, i_e, w = y
    lam, gamma, omega, alpha, mu = p.lam, p.gamma, p.omega, p.alpha, p.mu
    ds = -lam * i_e
    di = -gamma * i + lam * i_e
    die = (-(lam + gamma) * i_e + lam * mu * i_e * s - lam * i_e * i_e / s
           + 2.0 * lam * i_e * w / s
           - omega * i_e * (1.0 - alpha + alpha * (1.0 - i)))
    dw = omega * alpha * i_e * s - 2.0 * lam * i_e * w / s
    return np.array([ds, di, die, dw])


def rhs_susonly(t: float, y: np.ndarray, p: Params) -> np.ndarray:
    """Mean-field system when every rewired edge goes to a susceptible."""
    s, i, i_e, w = y
    lam, gamma, omega, alpha, mu = p.lam, p.gamma, p.omega, p.alpha, p.mu
    ds = -lam * i_e
    di = -gamma * i + lam * i_e
    die = (-(lam + gamma) * i_e + lam * mu * i_e * s - lam * i_e * i_e / s
           + 2.0 * lam * i_e * w / s - omega * i_e)
    dw = omega * alpha * i_e - 2.0 * lam * i_e * w / s
    return np.array([ds, di, die, dw])


def _warning_factor(system: TransformedSystem, p: Params, s: float, i: float,
                    i_e: float, l_prime: float) -> float:
    a = p.alpha
    if system is TransformedSystem.SI_A or system is TransformedSystem.UPPER_BU:
        return 1.0 - a + a * s
    if system is TransformedSystem.SIR_B:
        return 1.0 - a + a * (1.0 - i)
    if system is TransformedSystem.UPPER_BU1:
        return 1.0 - a + a * (1.0 - l_prime * i_e)
    return 1.0  # LOWER_BL, SUSONLY_C


def rhs_transformed(system: TransformedSystem, t: float, y: np.ndarray,
                    p: Params, l_prime: float = 0.0) -> np.ndarray:
    """Time-transformed system: s decreases at unit rate.

    SI_A uses the 3-vector (s, i_E, w); all others use (s, i, i_E, w).
    l_prime only enters UPPER_BU1.
    """
    lam, gamma, omega, alpha, mu = p.lam, p.gamma, p.omega, p.alpha, p.mu
    if system is TransformedSystem.SI_A:
        s, i_e, w = y
        i = 1.0 - s
    else:
        s, i, i_e, w = y
    warn = _warning_factor(system, p, s, i, i_e, l_prime)
    die = (-1.0 - gamma / lam + mu * s - i_e / s + 2.0 * w / s
           - (omega / lam) * warn)
    if system is TransformedSystem.SUSONLY_C:
        dw = omega * alpha / lam - 2.0 * w / s
    else:
        dw = (omega * alpha / lam) * s - 2.0 * w / s
    if system is TransformedSystem.SI_A:
        return np.array([-1.0, die, dw])
    di = 1.0 - (gamma / lam) * (i / i_e)
    return np.array([-1.0, di, die, dw])


@dataclass
class IntegrationResult:
    t: np.ndarray
    y: np.ndarray  # shape (dim, len(t))
    stop_reason: str  # "t_end", "i_floor", "ie_floor", or "s_floor"


S_FLOOR = 1e-6


def integrate(rhs, x0, t_end: float, i_floor: float | None = None,
              ie_floor: float | None = None, i_index: int | None = None,
              ie_index: int | None = None, s_index: int = 0,
              rtol: float = 1e-9, atol: float = 1e-12,
              dense_points: int = 0) -> IntegrationResult:
    """Adaptive Runge-Kutta integration with crossing-triggered stops.

    i_floor and ie_floor stop the run when the indicated component falls
    through the floor from above.  The susceptible fraction is refused
    below S_FLOOR unconditionally, since the mean-field equations divide
    by s.
    """
    events = []
    names = []

    def make_event(idx, floor):
        def ev(t, y):
            return y[idx] - floor
        ev.terminal = True
        ev.direction = -1
        return ev

    if i_floor is not None and i_index is not None:
        events.append(make_event(i_index, i_floor))
        names.append("i_floor")
    if ie_floor is not None and ie_index is not None:
        events.append(make_event(ie_index, ie_floor))
        names.append("ie_floor")
    events.append(make_event(s_index, S_FLOOR))
    names.append("s_floor")

    t_eval = np.linspace(0.0, t_end, dense_points) if dense_points else None
    sol = solve_ivp(rhs, (0.0, t_end), np.asarray(x0, dtype=float),
                    method="RK45", rtol=rtol, atol=atol, events=events,
                    t_eval=t_eval, dense_output=True)
    if not sol.success:
        raise RuntimeError(f"integration failed: {sol.message}")
    reason = "t_end"
    for name, te in zip(names, sol.t_events):
        if te.size > 0 and math.isclose(te[0], sol.t[-1], rel_tol=0, abs_tol=1e-12):
            reason = name
    if sol.status == 1 and reason == "t_end":
        # terminated by an event; find which one ended the run
        t_last = max((te[0] for te in sol.t_events if te.size), default=None)
        if t_last is not None:
            for name, te in zip(names, sol.t_events):
                if te.size and te[0] == t_last:
                    reason = name
    t = sol.t
    y = sol.y
    if sol.status == 1:
        # append the event point if the solver has not already
        t_ev = max(te[0] for te in sol.t_events if te.size)
        if t.size == 0 or t[-1] < t_ev:
            t = np.append(t, t_ev)
            y = np.column_stack([y, sol.sol(t_ev)])
    return IntegrationResult(t=t, y=y, stop_reason=reason)


def integrate_main(p: Params, x0, t_end: float, susceptible_only: bool = False,
                   i_floor: float | None = None,
                   dense_points: int = 0) -> IntegrationResult:
    """Run the plain-time system from x0 = (s, i, i_E, w)."""
    rhs = rhs_susonly if susceptible_only else rhs_main
    return integrate(lambda t, y: rhs(t, y, p), x0, t_end,
                     i_floor=i_floor, i_index=1, dense_points=dense_points)


def epidemic_start(p: Params, eps: float) -> np.ndarray:
    """Initial condition (1-eps, eps, eps/L, 0) seeding a fraction eps of
    infectives whose edge count matches the early exponential balance."""
    L = edge_ratio_constant(p)
    return np.array([1.0 - eps, eps, eps / L, 0.0])


def sir_final_size(p: Params, eps: float = 1e-10, i_floor: float = 1e-8,
                   t_end: float = 1e4, susceptible_only: bool = False) -> float:
    """Deterministic major-outbreak size: fraction ever infected when the
    plain-time run seeded with epidemic_start(p, eps) dies out."""
    res = integrate_main(p, epidemic_start(p, eps), t_end,
                         susceptible_only=susceptible_only, i_floor=i_floor)
    if res.stop_reason != "i_floor":
        raise RuntimeError(f"run did not die out (stopped on {res.stop_reason})")
    return 1.0 - float(res.y[0, -1])


def integrate_transformed(system: TransformedSystem, p: Params, eps: float,
                          l_prime: float | None = None,
                          ie_floor: float | None = None,
                          dense_points: int = 0) -> IntegrationResult:
    """Transformed run from s = 1 - eps until i_E returns to zero (or s
    bottoms out).  The final-size fraction is 1 - s at the stop time.

    Systems with the i/i_E term are singular at i_E = 0, so the default
    stop fires just above zero (well below any final-size tolerance).
    """
    lp = _resolve_l_prime(system, p, l_prime)
    x0 = transformed_start(system, p, eps)
    if ie_floor is None:
        start_ie = x0[1] if system is TransformedSystem.SI_A else x0[2]
        ie_floor = 0.0 if system is TransformedSystem.SI_A \
            else min(1e-9, 0.5 * start_ie)
    ie_index = 1 if system is TransformedSystem.SI_A else 2
    i_index = None if system is TransformedSystem.SI_A else 1
    rhs = lambda t, y: rhs_transformed(system, t, y, p, lp)
    return integrate(rhs, x0, 1.0 - eps, ie_floor=ie_floor, ie_index=ie_index,
                     i_floor=None, i_index=i_index, dense_points=dense_points)


def transformed_start(system: TransformedSystem, p: Params,
                      eps: float) -> np.ndarray:
    L = edge_ratio_constant(p)
    if system is TransformedSystem.SI_A:
        return np.array([1.0 - eps, eps / L, 0.0])
    return np.array([1.0 - eps, eps, eps / L, 0.0])


def _resolve_l_prime(system: TransformedSystem, p: Params,
                     l_prime: float | None) -> float:
    if system is not TransformedSystem.UPPER_BU1:
        return 0.0
    if l_prime is not None:
        return l_prime
    return 1.5 * edge_ratio_constant(p)


def transformed_final_size(system: TransformedSystem, p: Params,
                           eps: float = 1e-10,
                           l_prime: float | None = None) -> float:
    res = integrate_transformed(system, p, eps, l_prime=l_prime)
    if res.stop_reason == "s_floor":
        return 1.0 - S_FLOOR
    return 1.0 - float(res.y[0, -1])


def closed_form_si(t, p: Params, eps: float) -> np.ndarray:
    """Exact solution of the transformed SI system (gamma = 0).

    t may be scalar or array, with 0 <= t < 1 - eps; returns rows
    (s, i_E, w) matching rhs_transformed(SI_A).
    """
    if p.gamma != 0.0:
        raise ValueError("closed form requires gamma = 0")
    lam, omega, alpha, mu = p.lam, p.omega, p.alpha, p.mu
    t = np.asarray(t, dtype=float)
    s = 1.0 - eps - t
    log_ratio = np.log(s / (1.0 - eps))
    w = -(omega * alpha / lam) * s * s * log_ratio
    i_e = s * ((1.0 + (omega / lam) * (1.0 - alpha)) * log_ratio
               + (mu + omega * alpha / lam) * (1.0 - s)
               - omega * alpha * eps / lam
               + (2.0 * omega * alpha / lam) * s * log_ratio)
    return np.array([s, i_e, w])


def rhs_pair(t: float, y: np.ndarray, p: Params) -> np.ndarray:
    """Pair-level system for always-rewire (alpha = 1) dynamics.

    y = (s, i, x_ss, x_si) where x_ss, x_si count ordered pairs per
    individual.  Equivalent to rhs_main under the pair_to_main map.
    """
    s, i, x_ss, x_si = y
    lam, gamma, omega, mu = p.lam, p.gamma, p.omega, p.mu
    ds = -lam * x_si
    di = lam * x_si - gamma * i
    dx_ss = 2.0 * omega * s * x_si - 2.0 * lam * x_si * x_ss / s
    dx_si = (-lam * x_si * (1.0 - x_ss / s + x_si / s)
             - (omega * (1.0 - i) + gamma) * x_si)
    return np.array([ds, di, dx_ss, dx_si])


def pair_to_main(y: np.ndarray, p: Params) -> np.ndarray:
    """(s, i, x_ss, x_si) -> (s, i, i_E, w) with w the excess SS pairing."""
    s, i, x_ss, x_si = y
    return np.array([s, i, x_si, 0.5 * (x_ss - p.mu * s * s)])


def main_to_pair(y: np.ndarray, p: Params) -> np.ndarray:
    s, i, i_e, w = y
    return np.array([s, i, 2.0 * w + p.mu * s * s, i_e])


def detdisc_curvature(p: Params) -> float:
    """Second derivative of transformed i_E at the start of the run, at the
    critical transmission rate; a positive value signals a discontinuous
    final-size bifurcation."""
    return ((p.mu * (p.omega * (2.0 * p.alpha - 1.0) - p.gamma)
             - 2.0 * p.omega * p.alpha) / (p.gamma + p.omega))


def bounding_curvatures(p: Params) -> tuple[float, float]:
    """Start-of-run curvatures of the lower and upper comparison systems
    at the critical transmission rate."""
    lam_c = (p.gamma + p.omega) / (p.mu - 1.0)
    low = -p.mu + 2.0 * p.omega * p.alpha / lam_c
    up = -p.mu + 3.0 * p.omega * p.alpha / lam_c
    return low, up
