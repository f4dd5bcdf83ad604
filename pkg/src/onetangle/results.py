"""Tabular results of sweeps and curves, with exact-round-trip CSV output.

Values are written with 17 significant digits so re-reading a file
reproduces every float64 bit-exactly.  2-D grids are emitted row-major
(outer loop over the y axis) as ``x, y, value`` triples under a header
naming the axes.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass, field

import numpy as np


def format_float(v: float) -> str:
    return format(float(v), ".17g")


def atomic_write_text(path: str, text: str) -> None:
    """Write via a temp file + rename so readers never see partial output."""
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)


@dataclass
class SweepResult:
    """A 1-D curve (y axis empty) or a 2-D grid of values."""

    x_name: str
    x_values: np.ndarray
    values: np.ndarray
    y_name: str = ""
    y_values: np.ndarray = field(default_factory=lambda: np.empty(0))
    value_name: str = "value"

    @property
    def is_2d(self) -> bool:
        return self.y_name != ""

    def __post_init__(self):
        self.x_values = np.asarray(self.x_values, dtype=float)
        self.y_values = np.asarray(self.y_values, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.is_2d:
            expected = (len(self.y_values), len(self.x_values))
            if self.values.shape != expected:
                raise ValueError(f"2-D values shape {self.values.shape} != {expected}")
        elif self.values.shape != self.x_values.shape:
            raise ValueError("1-D values must match the x grid")

    def rows(self):
        if self.is_2d:
            for iy, y in enumerate(self.y_values):
                for ix, x in enumerate(self.x_values):
                    yield (x, y, self.values[iy, ix])
        else:
            for x, v in zip(self.x_values, self.values):
                yield (x, v)

    def header(self) -> list[str]:
        if self.is_2d:
            return [self.x_name, self.y_name, self.value_name]
        return [self.x_name, self.value_name]

    def to_csv_text(self) -> str:
        lines = [",".join(self.header())]
        for row in self.rows():
            lines.append(",".join(format_float(v) for v in row))
        return "\n".join(lines) + "\n"

    def write_csv(self, path: str) -> None:
        atomic_write_text(path, self.to_csv_text())

    def write_json(self, path: str) -> None:
        payload = {
            "columns": self.header(),
            "rows": [[float(v) for v in row] for row in self.rows()],
        }
        atomic_write_text(path, json.dumps(payload, indent=1) + "\n")

    @classmethod
    def from_csv(cls, path: str) -> "SweepResult":
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            data = [[float(c) for c in row] for row in reader if row]
        arr = np.asarray(data, dtype=float)
        if len(header) == 2:
            return cls(x_name=header[0], x_values=arr[:, 0], values=arr[:, 1], value_name=header[1])
        if len(header) != 3:
            raise ValueError(f"unsupported column count {len(header)} in {path}")
        xs = np.unique(arr[:, 0])
        ys = np.unique(arr[:, 1])
        values = np.full((len(ys), len(xs)), np.nan)
        xi = {x: i for i, x in enumerate(xs)}
        yi = {y: i for i, y in enumerate(ys)}
        for x, y, v in arr:
            values[yi[y], xi[x]] = v
        return cls(
            x_name=header[0],
            x_values=xs,
            values=values,
            y_name=header[1],
            y_values=ys,
            value_name=header[2],
        )
