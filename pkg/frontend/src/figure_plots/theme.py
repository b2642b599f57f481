"""Shared styling so every figure renders identically across machines."""

TRACE_COLOR = "0.7"
MEAN_COLOR = "black"
THEORY_COLOR = "tab:blue"
ALT_COLOR = "tab:red"
CRITICAL_COLOR = "0.3"
SCATTER_COLOR = "tab:orange"

RC = {
    "figure.figsize": (6.0, 4.0),
    "figure.dpi": 150,
    "savefig.dpi": 150,
    "font.size": 10,
    "axes.titlesize": 11,
    "axes.labelsize": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "legend.frameon": False,
    "lines.linewidth": 1.5,
}
