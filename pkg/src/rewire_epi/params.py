"""Model parameters, rewiring variants, and closed-form derived quantities."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class RewireMode(Enum):
    """How a susceptible chooses the target when it rewires an edge away
    from an infective neighbour."""

    UNIFORM_ALL = "uniform_all"          # uniform over the other n-2 individuals
    SUSCEPTIBLE_ONLY = "susceptible_only"  # uniform over other susceptibles; retain if none
    NON_INFECTIOUS = "non_infectious"    # uniform over susceptible + recovered
    RECOVERED_ONLY = "recovered_only"    # equivalent to dropping (alpha = 0)


@dataclass(frozen=True)
class Params:
    """The five model parameters.

    mu:     mean degree of the underlying graph (> 0)
    lam:    transmission rate per susceptible-infective edge (>= 0)
    gamma:  recovery rate; 0 selects the SI model (>= 0)
    omega:  warning (rewire/drop) rate per susceptible-infective edge (>= 0)
    alpha:  probability a warning rewires rather than drops, in [0, 1]
    """

    mu: float
    lam: float
    gamma: float = 0.0
    omega: float = 0.0
    alpha: float = 0.0

    def __post_init__(self) -> None:
        for name in ("mu", "lam", "gamma", "omega", "alpha"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ValueError(f"{name} must be a finite number, got {v!r}")
            object.__setattr__(self, name, float(v))
        if self.mu <= 0:
            raise ValueError(f"mu must be > 0, got {self.mu}")
        if self.lam < 0 or self.gamma < 0 or self.omega < 0:
            raise ValueError("rates must be >= 0")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")

    @property
    def is_si(self) -> bool:
        return self.gamma == 0.0

    def replace(self, **kwargs) -> "Params":
        fields = dict(mu=self.mu, lam=self.lam, gamma=self.gamma,
                      omega=self.omega, alpha=self.alpha)
        fields.update(kwargs)
        return Params(**fields)


def effective_mode(mode: RewireMode, p: Params) -> tuple[RewireMode, Params]:
    """Rewiring to a recovered individual never transmits, so RECOVERED_ONLY
    is run as UNIFORM_ALL with alpha = 0."""
    if mode is RewireMode.RECOVERED_ONLY:
        return RewireMode.UNIFORM_ALL, p.replace(alpha=0.0)
    return mode, p


def compute_r0(p: Params) -> float:
    """Basic reproduction number mu*lam / (lam + omega + gamma).

    Returns 0 in the fully degenerate case lam = omega = gamma = 0 (no
    events ever occur), by convention.
    """
    denom = p.lam + p.omega + p.gamma
    if denom == 0.0:
        return 0.0
    return p.mu * p.lam / denom


def compute_lambda_c(p: Params) -> float:
    """Critical transmission rate (gamma + omega) / (mu - 1).

    A major outbreak is possible iff lam > lambda_c.  Independent of alpha.
    """
    if p.mu <= 1.0:
        raise ValueError("subcritical graph: no finite lambda_c for mu <= 1")
    return (p.gamma + p.omega) / (p.mu - 1.0)


def compute_omega_c(p: Params) -> float:
    """Critical warning rate (mu - 1) * lam for fixed lam (SI viewpoint)."""
    if p.mu <= 1.0:
        raise ValueError("subcritical graph: no finite omega_c for mu <= 1")
    return (p.mu - 1.0) * p.lam


def compute_r_susonly(p: Params) -> float:
    """Sign discriminant mu*(gamma + omega - 2*alpha*omega) + 2*alpha*omega
    for the susceptible-only rewiring model.  Negative values open the
    full-infection (tau = 1) window."""
    return p.mu * (p.gamma + p.omega - 2.0 * p.alpha * p.omega) + 2.0 * p.alpha * p.omega


def edge_ratio_constant(p: Params) -> float:
    """Limiting infective-to-infectious-edge ratio lam / (lam*(mu-1) - omega)
    used to seed the deterministic final-size run."""
    denom = p.lam * (p.mu - 1.0) - p.omega
    if denom <= 0.0:
        raise ValueError("edge ratio constant requires lam*(mu-1) > omega")
    return p.lam / denom


@dataclass(frozen=True)
class DerivedQuantities:
    r0: float
    lambda_c: float
    omega_c: float
    L: float | None
    r_susonly: float


def derived_quantities(p: Params) -> DerivedQuantities:
    try:
        L = edge_ratio_constant(p)
    except ValueError:
        L = None
    return DerivedQuantities(
        r0=compute_r0(p),
        lambda_c=compute_lambda_c(p),
        omega_c=compute_omega_c(p),
        L=L,
        r_susonly=compute_r_susonly(p),
    )
