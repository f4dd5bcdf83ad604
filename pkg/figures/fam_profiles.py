"""Profile family: per-annulus ensemble parameters against radius."""

from __future__ import annotations

import os

import figstyle
from csvio import read_table


def plot_profile(recipe, in_dir: str, out_path: str) -> None:
    file_spec = recipe.inputs[0]
    cols = read_table(
        os.path.join(in_dir, file_spec["name"]),
        file_spec["columns"],
        string_columns=frozenset(file_spec.get("string_columns", ())),
    )
    fig, ax = figstyle.new_figure()
    ax.plot(
        cols[file_spec["x"]],
        cols[file_spec["series"][0]["column"]],
        color=figstyle.NUMERIC_COLOR,
        linewidth=1.5,
    )
    ax.set_xlabel(recipe.x_label)
    ax.set_ylabel(recipe.y_label)
    ax.set_title(recipe.title)
    figstyle.save(fig, out_path)
