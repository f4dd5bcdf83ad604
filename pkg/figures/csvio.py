"""Header-validated CSV loading for the figure recipes.

Rendering never reinterprets values: these helpers only parse floats
(blank cells become NaN) and refuse files whose header does not match
the recipe's expectation, reporting the column diff.
"""

from __future__ import annotations

import csv

import numpy as np


class InputError(Exception):
    """Bad or missing figure input."""


def read_table(
    path: str, expected_columns: list[str], string_columns: frozenset[str] = frozenset()
) -> dict[str, np.ndarray]:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise InputError(f"{path}: file is empty (no header row)") from None
            rows = [row for row in reader if row]
    except FileNotFoundError:
        raise InputError(f"{path}: input CSV not found") from None
    if header != expected_columns:
        missing = [c for c in expected_columns if c not in header]
        extra = [c for c in header if c not in expected_columns]
        raise InputError(
            f"{path}: header mismatch; expected {expected_columns}, found {header}"
            f" (missing {missing}, unexpected {extra})"
        )
    if not rows:
        raise InputError(f"{path}: no data rows")
    cols: dict[str, list] = {name: [] for name in header}
    for row in rows:
        if len(row) != len(header):
            raise InputError(f"{path}: row width {len(row)} does not match header")
        for name, cell in zip(header, row):
            if name in string_columns:
                cols[name].append(cell)
            else:
                cols[name].append(float(cell) if cell.strip() != "" else np.nan)
    return {name: np.asarray(vals) for name, vals in cols.items()}


def read_grid(path: str, expected_columns: list[str]):
    """(x, y, values) for a row-major x,y,value table."""
    cols = read_table(path, expected_columns)
    x_raw, y_raw, v_raw = (cols[c] for c in expected_columns)
    xs = np.unique(x_raw)
    ys = np.unique(y_raw)
    values = np.full((len(ys), len(xs)), np.nan)
    xi = {x: i for i, x in enumerate(xs)}
    yi = {y: i for i, y in enumerate(ys)}
    for x, y, v in zip(x_raw, y_raw, v_raw):
        values[yi[y], xi[x]] = v
    if np.isnan(values).any():
        raise InputError(f"{path}: grid is not complete (missing cells)")
    return xs, ys, values
