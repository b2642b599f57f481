"""Figure construction from validated CSV tables.

Input files are classified by schema and, for the trajectory fan, by
basename prefix: ``ode_*`` is the deterministic overlay, ``mean_*`` the
replicate average, everything else an individual simulated trace.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from . import theme
from .io import SchemaError, read_table

FIGURE_KINDS = (
    "trajectory_fan",
    "finalsize_scatter",
    "susonly_scatter",
    "yd_compare",
    "tau0_vs_giant",
)

TRAJECTORY_COLS = ("t", "s", "i")
SCATTER_COLS = ("lambda", "rep", "final_fraction", "major")
THEORY_COLS = ("lambda", "tau")
YD_COLS = ("omega", "tau_ours", "nu_yd", "sim_mean", "sim_se")
TAU0_COLS = ("mu", "tau0", "rho")


@dataclass
class FigureSpec:
    kind: str
    inputs: list[str]
    output: str
    lambda_c: float | None = None
    xlabel: str | None = None
    ylabel: str | None = None
    xlim: tuple[float, float] | None = None
    ylim: tuple[float, float] | None = None
    title: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in FIGURE_KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}")
        if not self.inputs:
            raise ValueError("at least one input CSV is required")


def render(spec: FigureSpec) -> list[str]:
    """Render one figure and write it as PNG and PDF.

    Returns the list of written file paths.  The axes object is built by
    a kind-specific helper; everything else (theme, labels, output) is
    shared.
    """
    with plt.rc_context(theme.RC):
        fig, ax = plt.subplots()
        try:
            _BUILDERS[spec.kind](spec, ax)
            _decorate(spec, ax)
            return _save(fig, spec.output)
        finally:
            plt.close(fig)


def build_axes(spec: FigureSpec, ax) -> None:
    """Plot a spec onto an existing axes (used by tests to count artists)."""
    _BUILDERS[spec.kind](spec, ax)
    _decorate(spec, ax)


def _decorate(spec: FigureSpec, ax) -> None:
    if spec.xlabel:
        ax.set_xlabel(spec.xlabel)
    if spec.ylabel:
        ax.set_ylabel(spec.ylabel)
    if spec.xlim:
        ax.set_xlim(*spec.xlim)
    if spec.ylim:
        ax.set_ylim(*spec.ylim)
    if spec.title:
        ax.set_title(spec.title)


def _save(fig, output: str) -> list[str]:
    base, ext = os.path.splitext(output)
    if ext.lower() not in (".png", ".pdf", ""):
        raise ValueError(f"unsupported output extension {ext!r}")
    written = []
    for fmt in ("png", "pdf"):
        path = f"{base}.{fmt}"
        fig.savefig(path, format=fmt)
        written.append(path)
    return written


def _build_trajectory_fan(spec: FigureSpec, ax) -> None:
    """Grey replicate traces, dashed replicate mean, solid deterministic
    overlay, all as infected fraction against time."""
    ode = mean = None
    traces = []
    for path in spec.inputs:
        base = os.path.basename(path)
        if base.startswith("ode_"):
            ode = read_table(path, TRAJECTORY_COLS)
        elif base.startswith("mean_"):
            mean = read_table(path, TRAJECTORY_COLS)
        else:
            traces.append(read_table(path, TRAJECTORY_COLS))
    for tab in traces:
        ax.plot(tab["t"], tab["i"], color=theme.TRACE_COLOR, lw=0.8,
                zorder=1)
    if mean is not None:
        ax.plot(mean["t"], mean["i"], color=theme.MEAN_COLOR, ls="--",
                label="replicate mean", zorder=3)
    if ode is not None:
        ax.plot(ode["t"], ode["i"], color=theme.THEORY_COLOR,
                label="deterministic limit", zorder=2)
    ax.set_xlabel("time")
    ax.set_ylabel("infected fraction")
    if mean is not None or ode is not None:
        ax.legend()


def _classify_sweep_inputs(spec: FigureSpec):
    """Split sweep inputs into the theory curve and the scatter table by
    checking which schema each file satisfies."""
    theory = scatter = None
    for path in spec.inputs:
        try:
            scatter = read_table(path, SCATTER_COLS)
            continue
        except SchemaError:
            pass
        theory = read_table(path, THEORY_COLS)
    if theory is None:
        raise SchemaError("no input matches the theory schema "
                          f"{','.join(THEORY_COLS)}")
    return theory, scatter


def _estimate_lambda_c(theory) -> float | None:
    """Fallback threshold estimate: midpoint between the last zero and
    the first positive point of the theory curve."""
    order = np.argsort(theory["lambda"])
    lam, tau = theory["lambda"][order], theory["tau"][order]
    positive = tau > 0
    if not positive.any() or positive.all():
        return None
    first = positive.argmax()
    return 0.5 * (lam[first - 1] + lam[first]) if first > 0 else None


def _build_sweep(spec: FigureSpec, ax) -> None:
    theory, scatter = _classify_sweep_inputs(spec)
    order = np.argsort(theory["lambda"])
    ax.plot(theory["lambda"][order], theory["tau"][order],
            color=theme.THEORY_COLOR, label="predicted final size")
    lam_c = spec.lambda_c
    if lam_c is None:
        lam_c = _estimate_lambda_c(theory)
    if lam_c is not None:
        ax.axvline(lam_c, color=theme.CRITICAL_COLOR, ls=":",
                   label="epidemic threshold")
    if scatter is not None and scatter["lambda"].size:
        ax.scatter(scatter["lambda"], scatter["final_fraction"], s=12,
                   color=theme.SCATTER_COLOR, alpha=0.5,
                   label="replicates")
    ax.set_xlabel("infection rate")
    ax.set_ylabel("final infected fraction")
    ax.legend()


def _build_yd_compare(spec: FigureSpec, ax) -> None:
    """The two competing final-size predictions against the simulated
    major-outbreak means with standard-error bars."""
    tab = read_table(spec.inputs[0], YD_COLS)
    order = np.argsort(tab["omega"])
    omega = tab["omega"][order]
    ax.plot(omega, tab["tau_ours"][order], color=theme.THEORY_COLOR,
            label="this model")
    ax.plot(omega, tab["nu_yd"][order], color=theme.ALT_COLOR, ls="--",
            label="alternative prediction")
    keep = np.isfinite(tab["sim_mean"][order])
    ax.errorbar(omega[keep], tab["sim_mean"][order][keep],
                yerr=np.nan_to_num(tab["sim_se"][order][keep]),
                fmt="o", color=theme.MEAN_COLOR, capsize=0, ms=4,
                label="simulation mean")
    ax.set_xlabel("rewiring rate")
    ax.set_ylabel("final infected fraction")
    ax.legend()


def _build_tau0_vs_giant(spec: FigureSpec, ax) -> None:
    """Threshold-limit final size against the giant component fraction;
    the curves cross where the two quantities exchange order."""
    tab = read_table(spec.inputs[0], TAU0_COLS)
    order = np.argsort(tab["mu"])
    mu = tab["mu"][order]
    ax.plot(mu, tab["tau0"][order], color=theme.THEORY_COLOR,
            label="threshold-limit final size")
    ax.plot(mu, tab["rho"][order], color=theme.ALT_COLOR, ls="--",
            label="giant component")
    ax.set_xlabel("mean degree")
    ax.set_ylabel("fraction")
    ax.legend()


_BUILDERS = {
    "trajectory_fan": _build_trajectory_fan,
    "finalsize_scatter": _build_sweep,
    "susonly_scatter": _build_sweep,
    "yd_compare": _build_yd_compare,
    "tau0_vs_giant": _build_tau0_vs_giant,
}
