"""Annulus-discretised Gaussian quantum-dot ensembles and their dephasing.

The dot is modelled as concentric annuli of nuclei at radii k*dr; every
nucleus in an annulus (and of one species) shares the same parameters.
Hyperfine and quadrupolar couplings follow Gaussian profiles
a(r) = a_scale * exp(-r^2/(2 sigma^2)) and likewise for omega_q.  A
uniform areal density on a disk makes the annulus population grow
linearly with radius; each annulus additionally contributes its first
site so the centre (and every sampled radius) is represented.  The
multiplicity scale is solved so the total nucleus count hits the target
exactly.

The electron-vs-everything one-tangling power of such an ensemble is a
product over annuli of per-nucleus factors, accumulated in log space so
80k-spin products cannot underflow.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NoCrossingError
from .evolution import EvolutionSpec
from .model import TWO_PI, NucleusParams, build_blocks
from .results import SweepResult, atomic_write_text, format_float
from .tangle import g1_series


@dataclass(frozen=True)
class SpeciesSpec:
    label: str
    j: float
    nu_larmor_per_tesla: float  # MHz per Tesla
    fraction: float


@dataclass(frozen=True)
class EnsembleSpec:
    """Construction parameters for a Gaussian annulus ensemble."""

    radius_max: float = 25.0  # nm
    dr: float = 0.056  # nm
    sigma: float = 7.0  # nm
    a_scale: float = -0.88  # MHz at r = 0, signed
    wq_scale: float = 0.030  # MHz at r = 0
    theta: float = math.pi / 3
    a_nc: float = 0.0051  # MHz
    species_mix: tuple[SpeciesSpec, ...] = (SpeciesSpec("71Ga", 1.5, 12.98, 1.0),)
    b_field: float = 1.0  # Tesla
    seed: int = 0
    n_target: int = 80247

    def __post_init__(self):
        if self.dr <= 0 or self.radius_max <= 0:
            raise ValueError("dr and radius_max must be positive")
        if self.n_target < 1:
            raise ValueError("n_target must be positive")
        if not self.species_mix:
            raise ValueError("species_mix must be nonempty")
        if abs(sum(s.fraction for s in self.species_mix) - 1.0) > 1e-9:
            raise ValueError("species fractions must sum to 1")


@dataclass(frozen=True)
class AnnulusEntry:
    r: float
    multiplicity: int
    params: NucleusParams


@dataclass(frozen=True)
class Ensemble:
    annuli: tuple[AnnulusEntry, ...]
    n_total: int


def _annulus_multiplicities(spec: EnsembleSpec) -> tuple[np.ndarray, np.ndarray]:
    n_annuli = int(math.floor(spec.radius_max / spec.dr)) + 1
    if spec.n_target < n_annuli:
        raise ValueError(f"n_target={spec.n_target} smaller than annulus count {n_annuli}")
    radii = spec.dr * np.arange(n_annuli)
    # one baseline site per annulus + a count proportional to radius
    beta = (spec.n_target - n_annuli) / radii.sum()
    mult = 1 + np.rint(beta * radii).astype(int)
    mult[-1] += spec.n_target - mult.sum()  # rounding residual to the outermost annulus
    if mult[-1] < 0:
        raise ValueError("multiplicity rounding produced a negative count")
    return radii, mult


def _apportion_species(
    mult: np.ndarray, spec: EnsembleSpec
) -> list[list[tuple[SpeciesSpec, int]]]:
    """Per-annulus species counts via error diffusion against the fractions.

    Keeps |assigned_s - fraction_s * sites_so_far| < 1 after every annulus,
    so the final species totals match round(fraction * n_total) to +-1.  The
    seed only permutes the tie-break priority between species.
    """
    rng = np.random.default_rng([int(spec.seed), 0x5EC1E5])
    order = list(rng.permutation(len(spec.species_mix)))
    species = [spec.species_mix[i] for i in order]
    fractions = np.array([s.fraction for s in species])
    assigned = np.zeros(len(species))
    out: list[list[tuple[SpeciesSpec, int]]] = []
    done = 0
    for m in mult:
        done += int(m)
        deficit = fractions * done - assigned
        counts = np.maximum(0, np.floor(deficit)).astype(int)
        overshoot = counts.sum() - int(m)
        if overshoot > 0:  # floor can only over-allocate by rounding slack
            for i in np.argsort(deficit - counts):
                take = min(overshoot, counts[i])
                counts[i] -= take
                overshoot -= take
                if overshoot == 0:
                    break
        leftover = int(m) - counts.sum()
        if leftover > 0:
            order_idx = np.argsort(-(deficit - counts), kind="stable")
            for i in range(leftover):
                counts[order_idx[i % len(species)]] += 1
        assigned += counts
        out.append([(sp, int(c)) for sp, c in zip(species, counts) if c > 0])
    return out


def gaussian_ensemble(spec: EnsembleSpec) -> Ensemble:
    """Build the annulus ensemble for a given spec (deterministic in the seed)."""
    radii, mult = _annulus_multiplicities(spec)
    per_annulus = _apportion_species(mult, spec)
    denom = 2.0 * spec.sigma**2
    entries: list[AnnulusEntry] = []
    for r, species_counts in zip(radii, per_annulus):
        profile = math.exp(-(r * r) / denom)
        a_r = spec.a_scale * profile
        wq_r = spec.wq_scale * profile
        for sp, count in species_counts:
            params = NucleusParams(
                j=sp.j,
                nu_larmor=sp.nu_larmor_per_tesla * spec.b_field,
                a=a_r,
                a_nc=spec.a_nc,
                omega_q=wq_r,
                theta=spec.theta,
                species=sp.label,
                warn_on_hierarchy=False,
            )
            entries.append(AnnulusEntry(r=float(r), multiplicity=count, params=params))
    total = sum(e.multiplicity for e in entries)
    if total != spec.n_target:
        raise AssertionError(f"multiplicity bookkeeping error: {total} != {spec.n_target}")
    return Ensemble(annuli=tuple(entries), n_total=total)


def species_counts(e: Ensemble) -> dict[str, int]:
    counts: dict[str, int] = {}
    for entry in e.annuli:
        counts[entry.params.species] = counts.get(entry.params.species, 0) + entry.multiplicity
    return counts


def total_hyperfine(e: Ensemble) -> float:
    """Sum of the signed hyperfine couplings over all nuclei, in MHz."""
    return sum(entry.multiplicity * entry.params.a for entry in e.annuli)


def mean_abs_hyperfine_angular(e: Ensemble) -> float:
    """Ensemble mean of |a_i| in angular units (rad/us).

    This is the statistic the reference figures quote (nominally in MHz);
    the nu-units mean is simply this value divided by 2*pi.
    """
    return TWO_PI * sum(entry.multiplicity * abs(entry.params.a) for entry in e.annuli) / e.n_total


def ensemble_electronic_otp(
    e: Ensemble, ev: EvolutionSpec, times: np.ndarray
) -> SweepResult:
    """Electron-vs-ensemble one-tangling power over a grid of total durations.

    For CPMG specs the grid times are total durations; each is divided by
    ev.n_iterations to get the single-unit time.  The product over annuli
    runs in log space in a fixed (construction) order.
    """
    times = np.asarray(times, dtype=float)
    if times.size == 0 or not e.annuli:
        raise ValueError("need a nonempty ensemble and time grid")
    log_prod = np.zeros_like(times)
    for entry in e.annuli:
        h0, h1 = build_blocks(entry.params)
        d = entry.params.dim
        g1 = g1_series(h0, h1, times, kind=ev.kind, n_iterations=ev.n_iterations)
        log_prod += entry.multiplicity * np.log((1.0 + d * g1) / (1.0 + d))
    eps = (1.0 - np.exp(log_prod)) / 3.0
    return SweepResult(x_name="t_us", x_values=times, values=eps, value_name="epsilon")


def dephasing_time(curve: SweepResult) -> float:
    """Earliest time where the curve reaches half its maximum, interpolated.

    Raises NoCrossingError for an all-zero curve.  If the very first grid
    point already exceeds half-max the grid start is returned (the
    crossing happened before the sampled window).
    """
    if curve.is_2d or curve.x_values.size == 0:
        raise ValueError("dephasing_time expects a nonempty 1-D curve")
    t = curve.x_values
    eps = curve.values
    peak = float(eps.max())
    if peak <= 0.0:
        raise NoCrossingError("curve is identically zero; no half-max crossing")
    level = peak / 2.0
    idx = int(np.argmax(eps >= level))
    if idx == 0:
        return float(t[0])
    t0, t1 = t[idx - 1], t[idx]
    e0, e1 = eps[idx - 1], eps[idx]
    return float(t0 + (level - e0) * (t1 - t0) / (e1 - e0))


ENSEMBLE_CSV_COLUMNS = [
    "r_nm",
    "multiplicity",
    "species",
    "j",
    "nu_larmor_MHz",
    "a_MHz",
    "a_nc_MHz",
    "delta_q_MHz",
    "theta_rad",
]


def write_ensemble_csv(e: Ensemble, path: str) -> None:
    lines = [",".join(ENSEMBLE_CSV_COLUMNS)]
    for entry in e.annuli:
        p = entry.params
        lines.append(
            ",".join(
                [
                    format_float(entry.r),
                    str(entry.multiplicity),
                    p.species,
                    format_float(p.j),
                    format_float(p.nu_larmor),
                    format_float(p.a),
                    format_float(p.a_nc),
                    format_float(p.delta_q_value),
                    format_float(p.theta),
                ]
            )
        )
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_ensemble_csv(path: str) -> Ensemble:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != ENSEMBLE_CSV_COLUMNS:
            raise ValueError(f"unexpected ensemble CSV columns: {reader.fieldnames}")
        entries = []
        for row in reader:
            params = NucleusParams(
                j=float(row["j"]),
                nu_larmor=float(row["nu_larmor_MHz"]),
                a=float(row["a_MHz"]),
                a_nc=float(row["a_nc_MHz"]),
                delta_q=float(row["delta_q_MHz"]),
                theta=float(row["theta_rad"]),
                species=row["species"],
                warn_on_hierarchy=False,
            )
            entries.append(
                AnnulusEntry(r=float(row["r_nm"]), multiplicity=int(row["multiplicity"]), params=params)
            )
    return Ensemble(annuli=tuple(entries), n_total=sum(e.multiplicity for e in entries))
