"""Final-size equations, root solvers, and regime classification.

Closed-form final-size analysis for the SI model with rewiring, the
susceptible-only SIR variant, the limiting discontinuity-size function,
the giant-component baseline, a heuristic transmission-probability
identity, and the rewiring final-size formula of Yao and Durrett for
comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import brentq

from .params import Params, compute_lambda_c, compute_r0, compute_r_susonly


class Regime(Enum):
    SUBCRITICAL = "subcritical"
    CONTINUOUS = "continuous"
    DISCONTINUOUS = "discontinuous"
    TAU_EQUALS_ONE = "tau_equals_one"


class Monotonicity(Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    CONSTANT = "constant"
    NA = "n/a"


@dataclass(frozen=True)
class PhasePoint:
    params: Params
    tau: float
    regime: Regime
    monotonicity: Monotonicity = Monotonicity.NA


ROOT_TOL = 1e-12
_H_CONST_TOL = 1e-11


def _scan_root(f, lo: float, hi: float, step: float = 1e-4,
               descending: bool = False) -> float | None:
    """First sign change of f on [lo, hi] by grid scan, refined by brentq.

    Scans upward from lo by default, downward from hi if descending.
    """
    xs = np.arange(lo, hi, step)
    xs = np.append(xs, hi)
    if descending:
        xs = xs[::-1]
    prev_x = float(xs[0])
    fx_prev = f(prev_x)
    if fx_prev == 0.0:
        return prev_x
    for x in xs[1:]:
        x = float(x)
        fx = f(x)
        if fx == 0.0:
            return x
        if (fx_prev < 0) != (fx < 0):
            left, right = sorted((x, prev_x))
            return float(brentq(f, left, right, xtol=ROOT_TOL, rtol=8.9e-16))
        fx_prev = fx
        prev_x = x
    return None


def f_eps(x, eps: float, p: Params):
    """Final-size residual for the SI model seeded with a fraction eps.

    The limiting fraction infected is the smallest root in (eps, 1).
    """
    lam, omega, alpha, mu = p.lam, p.omega, p.alpha, p.mu
    x = np.asarray(x, dtype=float)
    num = (lam * mu + omega * alpha) * x - omega * alpha * eps
    den = lam + omega * (1.0 - alpha) + 2.0 * omega * alpha * (1.0 - x)
    out = 1.0 - x - (1.0 - eps) * np.exp(-num / den)
    return float(out) if out.ndim == 0 else out


def solve_si_final(p: Params, eps: float = 0.0) -> tuple[float, int]:
    """Root of the SI final-size equation, with the sign of its derivative.

    eps = 0: the unique root in (0, 1), requiring R0 > 1.  eps > 0: the
    smallest root in (eps, 1).  derivative_sign is sign(F_eps'(tau));
    a major-outbreak limit is only certified when it is negative.
    """
    if p.gamma != 0.0:
        raise ValueError("SI final size requires gamma = 0")
    if not 0.0 <= eps < 1.0:
        raise ValueError("eps must be in [0, 1)")
    if eps == 0.0 and compute_r0(p) <= 1.0:
        raise ValueError("no root (subcritical or degenerate)")
    f = lambda x: f_eps(x, eps, p)
    tau = _scan_root(f, eps + 1e-6, 1.0 - 1e-9)
    if tau is None:
        raise ValueError("no root (subcritical or degenerate)")
    h = 1e-7
    deriv = (f(min(tau + h, 1.0)) - f(max(tau - h, eps))) / (2 * h)
    sign = 0 if abs(deriv) < 1e-9 else (1 if deriv > 0 else -1)
    return tau, sign


def giant_component(mu: float) -> float:
    """Fraction of vertices in the giant component: the positive root of
    1 - x = exp(-mu*x), or 0 when mu <= 1."""
    if mu <= 1.0:
        return 0.0
    f = lambda x: 1.0 - x - math.exp(-mu * x)
    return float(brentq(f, 1e-12, 1.0 - 1e-15, xtol=ROOT_TOL, rtol=8.9e-16))


def g_susonly(x: float, p: Params) -> float:
    """Final-size residual for susceptible-only rewiring."""
    lam, gamma, omega, alpha, mu = p.lam, p.gamma, p.omega, p.alpha, p.mu
    return ((1.0 + (gamma + omega * (1.0 - 2.0 * alpha)) / lam) * math.log1p(-x)
            + (mu - 2.0 * alpha * omega / lam) * x)


def solve_susonly_final(p: Params) -> PhasePoint:
    """Limiting major-outbreak size under susceptible-only rewiring.

    Subcritical transmission gives 0; a negative sign discriminant with
    transmission in the window (lambda_c, omega*(2*alpha-1) - gamma]
    infects everyone; otherwise the size is the unique root of the
    final-size function in (0, 1).
    """
    if p.mu <= 1.0:
        return PhasePoint(p, 0.0, Regime.SUBCRITICAL)
    lam_c = compute_lambda_c(p)
    if p.lam <= lam_c:
        return PhasePoint(p, 0.0, Regime.SUBCRITICAL)
    r = compute_r_susonly(p)
    if r < 0.0 and p.lam <= p.omega * (2.0 * p.alpha - 1.0) - p.gamma:
        return PhasePoint(p, 1.0, Regime.TAU_EQUALS_ONE)
    f = lambda x: g_susonly(x, p)
    tau = _scan_root(f, 1e-9, 1.0 - 1e-9)
    if tau is None:
        tau = _scan_root(f, 1e-12, 1e-4, step=1e-7)
    regime = Regime.DISCONTINUOUS if r < 0.0 else Regime.CONTINUOUS
    if tau is None:
        # supercritical but g > 0 over the whole scan: the root sits closer
        # to 1 than floating point resolves (continuity with the
        # everyone-infected window); report it at the s-floor convention
        return PhasePoint(p, 1.0 - 1e-6, regime)
    return PhasePoint(p, tau, regime)


def theta(mu: float, alpha: float) -> float:
    return 2.0 * alpha * (mu - 1.0) / (mu + alpha * (mu - 1.0))


def x0(mu: float, alpha: float) -> float:
    """Location of the stationary final size when rewiring dominates."""
    return (1.0 + alpha) / (2.0 * alpha) - 1.0 / (2.0 * mu)


def h_fn(mu: float, alpha: float) -> float:
    """Sign function separating increasing from decreasing dependence of
    the SI final size on the transmission rate.  Defined for
    mu < alpha/(1-alpha) (and all mu when alpha = 1)."""
    if alpha == 1.0:
        return -math.log(2.0 * mu) + mu - 0.5
    return (math.log((alpha - (1.0 - alpha) * mu) / (2.0 * alpha * mu))
            + (mu + alpha * (mu - 1.0)) / (2.0 * alpha))


def f0(x: float, mu: float, alpha: float) -> float:
    """Limit of the SI final-size function at the epidemic threshold; its
    largest root in [0, 1) is the size of the jump there."""
    th = theta(mu, alpha)
    return math.log1p(-x) + x / (1.0 - th * x)


def tau0(mu: float, alpha: float) -> float:
    """Largest root of f0 in [0, 1): the limiting outbreak size as the
    transmission rate approaches the threshold from above."""
    th = theta(mu, alpha)
    if th <= 0.5:
        return 0.0
    f = lambda x: f0(x, mu, alpha)
    # f0 > 0 on (0, tau0) and -> -inf at 1.  Near 0 the two terms cancel to
    # O(x^2), so only accept a left bracket point clearly above the
    # rounding-noise floor of the cancellation.
    lo = None
    x = 1e-8
    while x < 1.0:
        if f(x) > 1e-14 * x:
            lo = x
            break
        x *= 2.0
    if lo is None:
        return 0.0
    hi = 1.0 - 1e-15
    while f(hi) >= 0.0:  # pragma: no cover - f0(1-) = -inf
        hi = 0.5 * (hi + 1.0)
    return float(brentq(f, lo, hi, xtol=ROOT_TOL, rtol=8.9e-16))


def si_discontinuity(mu: float, alpha: float) -> bool:
    """Whether the SI final size jumps at the epidemic threshold."""
    return alpha > 1.0 / 3.0 and mu > 3.0 * alpha / (3.0 * alpha - 1.0)


def monotonicity_class(mu: float, alpha: float) -> Monotonicity:
    """Dependence of the SI final size on the transmission rate at fixed
    mu, omega, alpha (boundary cases resolve by the sign of h_fn)."""
    if alpha <= 0.5 or (alpha < 1.0 and mu >= alpha / (1.0 - alpha)):
        return Monotonicity.INCREASING
    h = h_fn(mu, alpha)
    if abs(h) <= _H_CONST_TOL:
        return Monotonicity.CONSTANT
    return Monotonicity.DECREASING if h > 0.0 else Monotonicity.INCREASING


def corollary_analysis(mu: float, alpha: float) -> tuple[float, Monotonicity]:
    """Threshold jump size and monotonicity class for the SI final size."""
    if mu <= 1.0:
        raise ValueError("mu must be > 1")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must be in [0, 1]")
    return tau0(mu, alpha), monotonicity_class(mu, alpha)


@dataclass(frozen=True)
class CorollaryConstants:
    theta_star: float
    alpha_star: float
    mu_hat_of_alpha_star: float
    tau_star: float
    mu_hat_star_1: float


def h_hat(th: float) -> float:
    """h evaluated along the ridge of stationary points, as a function of
    the ridge parameter."""
    return (2.0 * math.log(1.0 - th) - math.log(7.0 + th * th)
            + (3.0 + th) / (2.0 * (1.0 - th)))


def eta(alpha: float) -> float:
    return math.sqrt((9.0 * alpha - 7.0) / (1.0 + alpha))


def mu_hat(alpha: float) -> float:
    """Location of the maximum of h in mu, for alpha > 7/9."""
    return alpha / (2.0 * (1.0 - alpha)) * (1.0 + eta(alpha))


def mu_window(alpha: float) -> tuple[float, float]:
    """The interval of mu over which the SI final size decreases in the
    transmission rate, for alpha above the critical mixing level.

    Returns (mu_lower, mu_upper); mu_upper is inf when alpha = 1.
    """
    consts = compute_constants()
    if not consts.alpha_star < alpha <= 1.0:
        raise ValueError("window requires alpha in (alpha_star, 1]")
    if alpha == 1.0:
        return consts.mu_hat_star_1, math.inf
    hi = alpha / (1.0 - alpha)
    peak = mu_hat(alpha)
    check = alpha / (2.0 * (1.0 - alpha)) * (1.0 - eta(alpha))  # h minimum
    lo_start = max(check, 1.0 + 1e-12)
    mu_l = float(brentq(lambda m: h_fn(m, alpha), lo_start, peak,
                        xtol=ROOT_TOL, rtol=8.9e-16))
    mu_u = float(brentq(lambda m: h_fn(m, alpha), peak, hi - 1e-12,
                        xtol=ROOT_TOL, rtol=8.9e-16))
    return mu_l, mu_u


def compute_constants() -> CorollaryConstants:
    th_star = float(brentq(h_hat, 1e-9, 1.0 - 1e-9, xtol=ROOT_TOL, rtol=8.9e-16))
    a_star = (7.0 + th_star ** 2) / (9.0 - th_star ** 2)
    mh = mu_hat(a_star)
    t_star = x0(mh, a_star)
    mh1 = float(brentq(lambda m: h_fn(m, 1.0), 1.0, 10.0,
                       xtol=ROOT_TOL, rtol=8.9e-16))
    return CorollaryConstants(theta_star=th_star, alpha_star=a_star,
                              mu_hat_of_alpha_star=mh, tau_star=t_star,
                              mu_hat_star_1=mh1)


def sir_discontinuity_bounds(p: Params) -> tuple[str, bool]:
    """Three-valued verdict on whether the SIR final size jumps at the
    epidemic threshold, plus the conjectured yes/no for the gap.

    Returns (verdict, conjectured_discontinuous) where verdict is one of
    "discontinuous", "continuous", "gap".  The second element restates
    the proven verdict outside the gap.
    """
    if p.mu <= 1.0:
        raise ValueError("mu must be > 1")
    mu, gamma, omega, alpha = p.mu, p.gamma, p.omega, p.alpha
    conjectured = detdisc_sign(p) > 0.0
    a = omega * (2.0 * alpha - 1.0) - gamma
    if a > 0.0 and mu > 2.0 * omega * alpha / a:
        return "discontinuous", True
    b = omega * (3.0 * alpha - 1.0) - gamma
    if b <= 0.0 or mu <= 3.0 * omega * alpha / b:
        return "continuous", False
    return "gap", conjectured


def detdisc_sign(p: Params) -> float:
    """Numerator-scaled curvature criterion for a jump at the threshold."""
    if p.gamma + p.omega == 0.0:
        return -p.mu
    return ((p.mu * (p.omega * (2.0 * p.alpha - 1.0) - p.gamma)
             - 2.0 * p.omega * p.alpha) / (p.gamma + p.omega))


def yd_final_size(mu: float, lam: float, omega: float) -> tuple[float, float]:
    """Final size (sigma, nu) from the alternative rewiring analysis of
    Yao and Durrett, for Poisson degrees.

    sigma is the largest root of their implicit function in (0, 1), found
    by descending grid scan (0 if none); nu is the predicted fraction
    infected.
    """
    if lam <= 0:
        raise ValueError("lam must be > 0")
    beta = omega * mu / lam

    def G(z: float) -> float:
        return math.exp(mu * (z - 1.0))

    def f(x: float) -> float:
        den = mu * G(x) + beta * (1.0 - x) * G(x)  # G'(x) = mu*G(x)
        return math.log(mu * x / den) + 0.5 * beta * (x - 1.0) ** 2

    sigma = _scan_root(f, 1e-6, 1.0 - 1e-6, descending=True)
    if sigma is None:
        sigma = 0.0
    nu = 1.0 - math.exp(-0.5 * beta * (sigma - 1.0) ** 2) * G(sigma)
    return sigma, nu


def heuristic_identity_check(p: Params, tau: float) -> dict:
    """Both sides of the log-form final-size identity obtained from the
    per-edge transmission probability argument, evaluated at tau.

    Requires gamma = 0 and alpha = 1.  Returns the residual together with
    the transmission probability and the mean rewired-edge count.
    """
    if p.gamma != 0.0 or p.alpha != 1.0:
        raise ValueError("identity requires gamma = 0 and alpha = 1")
    if not 0.0 < tau < 1.0:
        raise ValueError("tau must be in (0, 1)")
    lam, omega, mu = p.lam, p.omega, p.mu
    p_i = lam / (lam + omega * (1.0 - tau))
    po_mean = (tau * omega / lam) * (1.0 + ((1.0 - tau) / tau) * math.log(1.0 - tau))
    lhs = 1.0 - tau
    rhs = math.exp(-(tau * (mu * lam + omega)
                     + omega * (1.0 - tau) * math.log(1.0 - tau))
                   / (lam + omega * (1.0 - tau)))
    return {"residual": lhs - rhs, "p_i": p_i, "po_mean": po_mean}
