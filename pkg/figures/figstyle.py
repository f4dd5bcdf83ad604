"""Shared plot style: fixed geometry, fonts, and colormap.

Everything that could make two renders of the same data differ is pinned
here; rendering stays a pure data-to-pixels mapping.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

FIGSIZE = (6.0, 4.0)
DPI = 150
DENSITY_CMAP = "viridis"
GAP_CMAP = "magma"
NUMERIC_COLOR = "#1f77b4"
ANALYTIC_COLOR = "#ff7f0e"
GRIDLINE_COLOR = "0.6"
LOCUS_COLOR = "#ffffff"

_RC = {
    "figure.figsize": FIGSIZE,
    "figure.dpi": DPI,
    "savefig.dpi": DPI,
    "font.size": 10,
    "axes.grid": False,
    "svg.hashsalt": "onetangle-figures",
}


def new_figure():
    plt.rcParams.update(_RC)
    fig, ax = plt.subplots(figsize=FIGSIZE)
    return fig, ax


def save(fig, path: str) -> None:
    """Atomic save: never leaves a partial image behind."""
    tmp = path + ".tmp.png"
    fig.savefig(tmp, format="png", dpi=DPI, bbox_inches="tight", metadata={"Software": "onetangle-figures"})
    plt.close(fig)
    import os

    os.replace(tmp, path)
