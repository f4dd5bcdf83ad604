"""Parameter sweeps, degeneracy catalogue, and strain-angle regimes.

2-D sweeps scan the dimensionless plane (|a|/omega, delta_q/omega) at
fixed Larmor frequency, evaluating the single-nucleus one-tangling power
either at a fixed time or maximised over a uniform time grid.  The
degeneracy catalogue records where diagonal eigenvalues of the two
blocks cross for spin 3/2, which is where CPMG entanglement concentrates
when the non-collinear coupling is weak.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from ._parallel import ordered_map
from .evolution import EvolutionSpec
from .model import NcVariant, NucleusParams, build_blocks
from .results import SweepResult
from .tangle import g1_series, nuclear_otp_max


@dataclass(frozen=True)
class TimeMode:
    """Fixed evaluation time, or a maximum over a uniform time grid."""

    kind: str  # "fixed" | "max"
    t: float  # the fixed time, or the grid upper end, in us
    steps: int = 512

    def __post_init__(self):
        if self.kind not in ("fixed", "max"):
            raise ValueError("time mode must be 'fixed' or 'max'")
        if self.t <= 0 or self.steps < 1:
            raise ValueError("time mode needs t > 0 and steps >= 1")

    def times(self) -> np.ndarray:
        if self.kind == "fixed":
            return np.array([self.t])
        return np.linspace(self.t / self.steps, self.t, self.steps)


@dataclass(frozen=True)
class SweepGrid:
    """Axes and template for a 2-D sweep over (|a|/omega, delta_q/omega)."""

    x_values: np.ndarray
    y_values: np.ndarray
    template: NucleusParams
    time_mode: TimeMode
    x_name: str = "abs_a_over_omega"
    y_name: str = "delta_q_over_omega"

    def __post_init__(self):
        for name in ("x_values", "y_values"):
            vals = np.asarray(getattr(self, name), dtype=float)
            object.__setattr__(self, name, vals)
            if vals.size == 0 or (vals.size > 1 and not np.all(np.diff(vals) > 0)):
                raise ValueError(f"{name} must be nonempty and strictly increasing")


def _sweep_row(args) -> np.ndarray:
    (y, xs, template, variant, kind, n_iter, times, peak_eps) = args
    out = np.empty(len(xs))
    w = template.nu_larmor
    sign = math.copysign(1.0, template.a) if template.a != 0 else -1.0
    for i, x in enumerate(xs):
        p = replace(template, a=sign * x * w, delta_q=y * w, omega_q=None)
        h0, h1 = build_blocks(p, variant)
        g1 = g1_series(h0, h1, times, kind=kind, n_iterations=n_iter)
        out[i] = peak_eps * (1.0 - g1.min())
    return out


def sweep2d(
    grid: SweepGrid,
    ev: EvolutionSpec,
    variant: NcVariant = NcVariant.QUADRUPOLAR,
    threads: int = 1,
) -> SweepResult:
    """Single-nucleus one-tangling power over the parameter grid.

    Each cell rescales the template to a = sign(template.a) * x * omega and
    delta_q = y * omega.  With a "max" time mode the cell value is the
    maximum over the time grid (times are total durations; CPMG units are
    t/n_iterations).
    """
    times = grid.time_mode.times()
    template = replace(grid.template, warn_on_hierarchy=False)
    peak = nuclear_otp_max(template.dim)
    rows = [
        (y, grid.x_values, template, variant, ev.kind, ev.n_iterations, times, peak)
        for y in grid.y_values
    ]
    values = np.vstack(ordered_map(_sweep_row, rows, threads=threads))
    return SweepResult(
        x_name=grid.x_name,
        x_values=grid.x_values,
        y_name=grid.y_name,
        y_values=grid.y_values,
        values=values,
        value_name="epsilon",
    )


@dataclass(frozen=True)
class DegeneracyRow:
    """One diagonal-eigenvalue crossing of the spin-3/2 blocks.

    ``slope``/``intercept`` give delta_q/omega as a function of the signed
    ratio a/omega; vertical loci fix a/omega = ``vertical`` instead.  The
    ``nc_condition`` column reproduces the catalogued condition on
    (a_nc, theta) verbatim.
    """

    delta_m: int
    electron: str  # "up" | "down"
    m_from: Fraction
    m_to: Fraction
    slope: float | None
    intercept: float | None
    vertical: float | None
    nc_condition: str

    @property
    def is_vertical(self) -> bool:
        return self.vertical is not None

    def delta_q_over_omega(self, a_over_omega: float) -> float:
        if self.is_vertical:
            raise ValueError("vertical locus fixes a/omega, not delta_q/omega")
        return self.slope * a_over_omega + self.intercept


def _row(dm, electron, m_from, m_to, slope, intercept, vertical, nc) -> DegeneracyRow:
    return DegeneracyRow(
        delta_m=dm,
        electron=electron,
        m_from=Fraction(m_from, 2),
        m_to=Fraction(m_to, 2),
        slope=slope,
        intercept=intercept,
        vertical=vertical,
        nc_condition=nc,
    )


_NC_COS = "a_nc*cos(theta)^2 = 0"
_NC_MID = "sqrt(3)/2*a_nc*sin(2 theta) + 3/4*a_nc*cos(theta)^2 = 0"
_NC_SIN_MINUS = "sqrt(3)*a_nc*sin(2 theta) - a_nc*cos(theta)^2 = 0"
_NC_SIN_PLUS = "sqrt(3)*a_nc*sin(2 theta) + a_nc*cos(theta)^2 = 0"
_NC_SIN = "sqrt(3)*a_nc*sin(2 theta) = 0"

_SPIN32_ROWS = (
    _row(1, "up", 3, 1, -0.25, -0.5, None, _NC_COS),
    _row(1, "up", 1, -1, None, None, -2.0, _NC_MID),
    _row(1, "up", -1, -3, 0.25, 0.5, None, _NC_COS),
    _row(1, "down", 3, 1, 0.25, -0.5, None, _NC_COS),
    _row(1, "down", 1, -1, None, None, 2.0, _NC_MID),
    _row(1, "down", -1, -3, -0.25, 0.5, None, _NC_COS),
    _row(2, "up", 3, -1, -0.5, -1.0, None, _NC_SIN_MINUS),
    _row(2, "up", 1, -3, 0.5, 1.0, None, _NC_SIN_PLUS),
    _row(2, "down", 3, -1, 0.5, -1.0, None, _NC_SIN_MINUS),
    _row(2, "down", 1, -3, -0.5, 1.0, None, _NC_SIN_PLUS),
    _row(3, "up", 3, -3, None, None, -2.0, _NC_SIN),
    _row(3, "down", 3, -3, None, None, 2.0, _NC_SIN),
)


def degeneracy_table(j: float) -> tuple[DegeneracyRow, ...]:
    """The catalogued crossing conditions; symbolic rows exist for j = 3/2 only."""
    if abs(j - 1.5) > 1e-12:
        raise ValueError(
            "symbolic degeneracy rows are catalogued for j = 3/2 only; "
            "use gap_map for numeric crossings at other spins"
        )
    return _SPIN32_ROWS


def locus_lines_abs(rows, a_sign: float) -> list[tuple[str, float, float]]:
    """Map signed rows into the (|a|/omega, delta_q/omega) plane.

    Returns ("line", slope, intercept) and ("vertical", x, 0) entries;
    vertical loci on the wrong side of zero for the given sign are dropped.
    """
    if a_sign == 0:
        raise ValueError("a_sign must be +-1")
    s = math.copysign(1.0, a_sign)
    out = []
    for row in rows:
        if row.is_vertical:
            x = row.vertical / s
            if x >= 0:
                out.append(("vertical", x, 0.0))
        else:
            out.append(("line", row.slope * s, row.intercept))
    return out


def locus_distance_grid(
    xs: np.ndarray, ys: np.ndarray, rows, a_sign: float
) -> np.ndarray:
    """Min perpendicular distance of every grid cell to any locus, in cell units.

    Assumes uniformly spaced axes; distances are measured after rescaling
    each axis by its grid step, matching "within k cells" criteria.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    dx = xs[1] - xs[0] if len(xs) > 1 else 1.0
    dy = ys[1] - ys[0] if len(ys) > 1 else 1.0
    grid_x, grid_y = np.meshgrid(xs, ys)
    dist = np.full(grid_x.shape, np.inf)
    for kind, p, q in locus_lines_abs(rows, a_sign):
        if kind == "vertical":
            d = np.abs(grid_x - p) / dx
        else:
            # y = p*x + q  ->  |p*x - y + q| / hypot(p*dx, dy) in cell units
            d = np.abs(p * grid_x - grid_y + q) / math.hypot(p * dx, dy)
        dist = np.minimum(dist, d)
    return dist


def _gap_row(args) -> np.ndarray:
    (y, xs, template, variant, full_matrix) = args
    w = template.nu_larmor
    sign = math.copysign(1.0, template.a) if template.a != 0 else -1.0
    out = np.empty(len(xs))
    for i, x in enumerate(xs):
        a_nc = template.a_nc if full_matrix else 0.0
        p = replace(template, a=sign * x * w, delta_q=y * w, omega_q=None, a_nc=a_nc)
        h0, h1 = build_blocks(p, variant)
        w_ang = 2.0 * math.pi * w
        gaps = []
        for h in (h0, h1):
            energies = np.linalg.eigvalsh(h)
            diffs = np.abs(energies[:, None] - energies[None, :])
            gaps.append(diffs[np.triu_indices(len(energies), k=1)].min())
        out[i] = min(gaps) / w_ang
    return out


def gap_map(
    grid: SweepGrid,
    variant: NcVariant = NcVariant.QUADRUPOLAR,
    full_matrix: bool = False,
    threads: int = 1,
) -> SweepResult:
    """Smallest eigenvalue gap (normalised by omega) over both blocks per cell.

    By default the blocks are evaluated at a_nc = 0, the diagonal reference
    whose exact crossings define the catalogued loci; ``full_matrix``
    switches to the perturbed spectra.
    """
    template = replace(grid.template, warn_on_hierarchy=False)
    rows = [(y, grid.x_values, template, variant, full_matrix) for y in grid.y_values]
    values = np.vstack(ordered_map(_gap_row, rows, threads=threads))
    return SweepResult(
        x_name=grid.x_name,
        x_values=grid.x_values,
        y_name=grid.y_name,
        y_values=grid.y_values,
        values=values,
        value_name="min_gap_over_omega",
    )


@dataclass(frozen=True)
class ThetaRegime:
    theta_expression: str
    representative_theta: float
    active_transitions: tuple[int, ...]
    description: str


def theta_regimes() -> tuple[ThetaRegime, ...]:
    """Strain angles classified by which nuclear transitions they activate."""
    return (
        ThetaRegime(
            "n*pi",
            0.0,
            (2,),
            "only delta_m = 2 transitions are driven (sin(2 theta) = 0)",
        ),
        ThetaRegime(
            "n*pi +- arccos(3/5)/2",
            0.5 * math.acos(3.0 / 5.0),
            (1, 2),
            "|sin(2 theta)| = cos(theta)^2: both transition types comparable",
        ),
        ThetaRegime(
            "n*pi/2 +- arctan(2)/2",
            0.5 * math.pi - 0.5 * math.atan(2.0),
            (1, 2),
            "|sin(2 theta)| - cos(theta)^2 maximal: delta_m = 1 dominates",
        ),
        ThetaRegime(
            "pi/2 + n*pi",
            0.5 * math.pi,
            (),
            "non-collinear term vanishes; no transitions are driven",
        ),
    )
