"""Epidemics with preventive edge rewiring on Erdos-Renyi networks.

Exact event-driven simulation, a brute-force graph oracle, branching-process
early-phase analysis, deterministic ODE limits, and closed-form final-size
machinery for SIR/SI epidemics in which susceptibles drop or rewire edges
to infectious neighbours.
"""

__version__ = "0.1.0"

from .params import (
    DerivedQuantities,
    Params,
    RewireMode,
    compute_lambda_c,
    compute_omega_c,
    compute_r0,
    compute_r_susonly,
    derived_quantities,
    edge_ratio_constant,
)
from .ctmc import FinalSizeReport, SimConfig, Trajectory, run, run_replicates
from .finalsize import (
    PhasePoint,
    Regime,
    Monotonicity,
    corollary_analysis,
    compute_constants,
    giant_component,
    solve_si_final,
    solve_susonly_final,
    yd_final_size,
)
from .ode import TransformedSystem, closed_form_si, sir_final_size

__all__ = [
    "DerivedQuantities",
    "FinalSizeReport",
    "Monotonicity",
    "Params",
    "PhasePoint",
    "Regime",
    "RewireMode",
    "SimConfig",
    "Trajectory",
    "TransformedSystem",
    "closed_form_si",
    "compute_constants",
    "compute_lambda_c",
    "compute_omega_c",
    "compute_r0",
    "compute_r_susonly",
    "corollary_analysis",
    "derived_quantities",
    "edge_ratio_constant",
    "giant_component",
    "run",
    "run_replicates",
    "sir_final_size",
    "solve_si_final",
    "solve_susonly_final",
    "yd_final_size",
    "__version__",
]
