"""Scan family: dephasing time against the scanned Larmor frequency."""

from __future__ import annotations

import os

import figstyle
from csvio import read_table


def plot_t2_scan(recipe, in_dir: str, out_path: str) -> None:
    file_spec = recipe.inputs[0]
    cols = read_table(os.path.join(in_dir, file_spec["name"]), file_spec["columns"])
    fig, ax = figstyle.new_figure()
    ax.plot(
        cols[file_spec["x"]],
        cols[file_spec["series"][0]["column"]] * 1e3,  # us -> ns on the axis
        ".",
        markersize=3,
        color=figstyle.NUMERIC_COLOR,
    )
    ax.set_xlabel(recipe.x_label)
    ax.set_ylabel(recipe.y_label)
    ax.set_title(recipe.title)
    figstyle.save(fig, out_path)
