"""Density family: a value over the (|a|/omega, delta_q/omega) plane,
with the degeneracy catalogue overlaid as dashed lines when available."""

from __future__ import annotations

import csv
import os

import figstyle
from csvio import InputError, read_grid

LOCI_COLUMNS = [
    "delta_m",
    "electron",
    "m_from",
    "m_to",
    "kind",
    "slope",
    "intercept",
    "x_vertical",
    "nc_condition",
]


def read_loci(path: str):
    """Locus lines from a degeneracy-table CSV: [("line", m, b) | ("vertical", x, 0)]."""
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames != LOCI_COLUMNS:
                raise InputError(
                    f"{path}: header mismatch; expected {LOCI_COLUMNS}, found {reader.fieldnames}"
                )
            lines = []
            for row in reader:
                if row["kind"] == "line":
                    lines.append(("line", float(row["slope"]), float(row["intercept"])))
                elif row["kind"] == "vertical":
                    lines.append(("vertical", float(row["x_vertical"]), 0.0))
    except FileNotFoundError:
        raise InputError(f"{path}: loci CSV not found") from None
    if not lines:
        raise InputError(f"{path}: no usable locus rows")
    return lines


def plot_density(recipe, in_dir: str, out_path: str) -> None:
    file_spec = recipe.inputs[0]
    xs, ys, values = read_grid(os.path.join(in_dir, file_spec["name"]), file_spec["columns"])
    fig, ax = figstyle.new_figure()
    cmap = figstyle.GAP_CMAP if recipe.family == "gap_density" else figstyle.DENSITY_CMAP
    mesh = ax.pcolormesh(xs, ys, values, cmap=cmap, shading="nearest")
    fig.colorbar(mesh, ax=ax, label=recipe.value_label)

    if recipe.loci is not None:
        loci_path = os.path.join(in_dir, recipe.loci)
        if os.path.exists(loci_path):
            for kind, p, q in read_loci(loci_path):
                if kind == "vertical":
                    if xs[0] <= p <= xs[-1]:
                        ax.axvline(p, color=figstyle.LOCUS_COLOR, linestyle="--", linewidth=0.8)
                else:
                    yy = p * xs + q
                    mask = (yy >= ys[0]) & (yy <= ys[-1])
                    if mask.any():
                        ax.plot(
                            xs[mask], yy[mask],
                            color=figstyle.LOCUS_COLOR, linestyle="--", linewidth=0.8,
                        )
    ax.set_xlim(xs[0], xs[-1])
    ax.set_ylim(ys[0], ys[-1])
    ax.set_xlabel(recipe.x_label)
    ax.set_ylabel(recipe.y_label)
    ax.set_title(recipe.title)
    figstyle.save(fig, out_path)
