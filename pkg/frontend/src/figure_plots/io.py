"""CSV loading with explicit schema validation."""

from __future__ import annotations

import csv
import os

import numpy as np


class SchemaError(ValueError):
    """A CSV file does not match its documented schema."""


def read_table(path: str, required: tuple[str, ...]) -> dict[str, np.ndarray]:
    """Load a headed CSV into a column dictionary of float arrays.

    Raises SchemaError naming the first missing column, so a mismatched
    file points directly at the offending field.  An empty body (header
    only) is legal and yields zero-length columns.
    """
    if not os.path.exists(path):
        raise SchemaError(f"{path}: file does not exist")
    with open(path, newline="") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file, expected a header row")
        header = [h.strip() for h in header]
        for col in required:
            if col not in header:
                raise SchemaError(f"{path}: missing column {col!r} "
                                  f"(found {', '.join(header)})")
        rows = [row for row in reader if row]
    data = np.array(rows, dtype=float) if rows else np.empty((0, len(header)))
    return {name: data[:, k] for k, name in enumerate(header)}
