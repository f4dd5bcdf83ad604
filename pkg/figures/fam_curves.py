"""Curve family: quantities against time, with optional analytic overlay
and resonance gridlines."""

from __future__ import annotations

import os

import numpy as np

import figstyle
from csvio import read_table


def plot_curves(recipe, in_dir: str, out_path: str) -> None:
    fig, ax = figstyle.new_figure()
    for file_spec in recipe.inputs:
        cols = read_table(os.path.join(in_dir, file_spec["name"]), file_spec["columns"])
        x = cols[file_spec["x"]]
        for series in file_spec["series"]:
            y = cols[series["column"]]
            if np.isnan(y).all():
                continue  # analytic column legitimately blank (e.g. CPMG runs)
            ax.plot(
                x,
                y,
                label=series["label"],
                color=series.get("color", figstyle.NUMERIC_COLOR),
                linestyle=series.get("linestyle", "-"),
                linewidth=series.get("linewidth", 1.5),
            )
    if recipe.gridlines is not None:
        path = os.path.join(in_dir, recipe.gridlines["name"])
        if os.path.exists(path):
            marks = read_table(path, recipe.gridlines["columns"])[recipe.gridlines["column"]]
            for t in marks:
                ax.axvline(t, color=figstyle.GRIDLINE_COLOR, linestyle="--", linewidth=0.8)
    if recipe.x_scale == "log":
        ax.set_xscale("log")
    ax.set_xlabel(recipe.x_label)
    ax.set_ylabel(recipe.y_label)
    ax.set_title(recipe.title)
    ax.legend(loc="best")
    figstyle.save(fig, out_path)
