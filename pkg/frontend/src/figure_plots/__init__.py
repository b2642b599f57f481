"""Figure rendering for epidemic simulation CSV outputs.

The package reads the CSV files written by the simulation harness and
renders them as static PNG+PDF figures.  It deliberately knows nothing
about the simulator itself: every input arrives through a documented CSV
schema.
"""

from .io import SchemaError, read_table
from .render import FIGURE_KINDS, FigureSpec, render

__version__ = "0.1.0"

__all__ = [
    "FIGURE_KINDS",
    "FigureSpec",
    "SchemaError",
    "read_table",
    "render",
    "__version__",
]
