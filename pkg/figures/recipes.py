"""The recipe catalogue: figure id -> inputs, expected columns, labels.

Each recipe names the CSV files it consumes (as produced by the
``onetangle`` CLI, see the mapping in figures/README.md), the exact
header it requires, and the presentation choices (scales, labels,
overlays).  Recipes never transform data beyond unit relabeling on axes.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class FigureRecipe:
    figure_id: str
    family: str
    inputs: tuple
    title: str
    x_label: str
    y_label: str
    value_label: str = ""
    x_scale: str = "linear"
    gridlines: dict | None = None
    loci: str | None = None


G1_COLUMNS = ["t_us", "g1_numeric", "g1_analytic", "otp_numeric", "otp_analytic"]
CURVE_COLUMNS = ["t_us", "epsilon"]
SWEEP_COLUMNS = ["abs_a_over_omega", "delta_q_over_omega", "epsilon"]
GAP_COLUMNS = ["abs_a_over_omega", "delta_q_over_omega", "min_gap_over_omega"]
ENSEMBLE_COLUMNS = [
    "r_nm", "multiplicity", "species", "j", "nu_larmor_MHz",
    "a_MHz", "a_nc_MHz", "delta_q_MHz", "theta_rad",
]
T2_COLUMNS = ["omega_mhz", "t2_us"]

X_PLANE = "|a| / omega"
Y_PLANE = "delta_q / omega"


def _g1_curve(figure_id, title, with_analytic=True, with_gridlines=False):
    series = [
        {"column": "otp_numeric", "label": "numeric", "color": "#1f77b4", "linestyle": "-"},
    ]
    if with_analytic:
        series.append(
            {"column": "otp_analytic", "label": "analytic", "color": "#ff7f0e", "linestyle": "--"}
        )
    return FigureRecipe(
        figure_id=figure_id,
        family="curves",
        inputs=(
            {"name": "g1.csv", "columns": G1_COLUMNS, "x": "t_us", "series": series},
        ),
        title=title,
        x_label="t (us)",
        y_label="one-tangling power",
        gridlines=(
            {"name": "resonances.csv", "columns": ["t_us"], "column": "t_us"}
            if with_gridlines
            else None
        ),
    )


def _ensemble_curve(figure_id, title, name="curve.csv", x_scale="linear"):
    return FigureRecipe(
        figure_id=figure_id,
        family="curves",
        inputs=(
            {
                "name": name,
                "columns": CURVE_COLUMNS,
                "x": "t_us",
                "series": [{"column": "epsilon", "label": "decohering power"}],
            },
        ),
        title=title,
        x_label="t (us)",
        y_label="electronic one-tangling power",
        x_scale=x_scale,
    )


def _density(figure_id, title, columns=SWEEP_COLUMNS, family="density", value_label="one-tangling power"):
    return FigureRecipe(
        figure_id=figure_id,
        family=family,
        inputs=({"name": "sweep2d.csv" if family == "density" else "gapmap.csv", "columns": columns},),
        title=title,
        x_label=X_PLANE,
        y_label=Y_PLANE,
        value_label=value_label,
        loci="degeneracy_table.csv",
    )


def _profile(figure_id, title, column, y_label):
    return FigureRecipe(
        figure_id=figure_id,
        family="profile",
        inputs=(
            {
                "name": "ensemble.csv",
                "columns": ENSEMBLE_COLUMNS,
                "string_columns": ["species"],
                "x": "r_nm",
                "series": [{"column": column, "label": column}],
            },
        ),
        title=title,
        x_label="r (nm)",
        y_label=y_label,
    )


RECIPES: dict[str, FigureRecipe] = {}


def _register(recipe: FigureRecipe) -> None:
    RECIPES[recipe.figure_id] = recipe


_register(_g1_curve("fig1a", "Single-nucleus one-tangling power, numeric vs analytic", with_gridlines=True))
_register(_profile("fig2a", "Hyperfine coupling profile across the dot", "a_MHz", "a / 2pi (MHz)"))
_register(_profile("fig2b", "Quadrupolar shift profile across the dot", "delta_q_MHz", "delta_q / 2pi (MHz)"))
_register(_ensemble_curve("fig2d", "Free-evolution decohering power, full dot"))
_register(
    FigureRecipe(
        figure_id="fig3a",
        family="curves",
        inputs=(
            {
                "name": "curve_free.csv",
                "columns": CURVE_COLUMNS,
                "x": "t_us",
                "series": [{"column": "epsilon", "label": "free", "color": "#1f77b4"}],
            },
            {
                "name": "curve_cpmg.csv",
                "columns": CURVE_COLUMNS,
                "x": "t_us",
                "series": [
                    {"column": "epsilon", "label": "CPMG (1 unit)", "color": "#ff7f0e"}
                ],
            },
        ),
        title="Decohering power: free evolution vs one CPMG unit",
        x_label="t (us)",
        y_label="electronic one-tangling power",
        x_scale="log",
    )
)
_register(
    FigureRecipe(
        figure_id="fig3b",
        family="t2_scan",
        inputs=(
            {
                "name": "t2_vs_omega.csv",
                "columns": T2_COLUMNS,
                "x": "omega_mhz",
                "series": [{"column": "t2_us", "label": "T2"}],
            },
        ),
        title="Dephasing time vs nuclear Larmor frequency",
        x_label="omega / 2pi (MHz)",
        y_label="T2 (ns)",
    )
)
_register(_density("fig4a", "CPMG one-tangling power, theta = pi/4"))
_register(
    _density(
        "fig4b",
        "Smallest level splitting of the diagonal blocks",
        columns=GAP_COLUMNS,
        family="gap_density",
        value_label="min gap / omega",
    )
)
_register(_density("fig4c", "CPMG one-tangling power, theta = pi/2"))
_register(_density("fig4d", "CPMG one-tangling power, theta = pi"))
_register(_density("fig5d", "Max-over-time CPMG one-tangling power"))
_register(_g1_curve("fig6a", "Nuclear one-tangling power, one CPMG unit", with_analytic=False))
_register(_g1_curve("fig6c", "Nuclear one-tangling power, 85 CPMG iterations", with_analytic=False))
_register(_density("fig6d", "Max-over-time one-tangling power, N = 1"))
_register(_density("fig6g", "Max-over-time one-tangling power, N = 85"))
_register(_ensemble_curve("fig7b", "Decohering power, mixed Ga/In bath"))
_register(_density("fig7d", "CPMG one-tangling power, spin-9/2 nucleus"))
