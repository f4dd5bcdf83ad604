"""One-tangling powers of block-diagonal central-spin evolutions.

For U = |0><0| (x) r0 + |1><1| (x) r1 acting on the electron and one
spin-j nucleus of dimension d, the generalized Makhlin invariant is
G1 = |Tr[r0† r1]|^2 / d^2 and the entangling power follows in closed
form: isolating the nucleus gives (d/(3(d+1)))(1 - G1); isolating the
electron from n nuclei gives 1/3 - (1/3) prod_i (1 + d_i G1_i)/(d_i + 1).

This module also carries the closed-form spin-3/2 free-evolution G1 and
its resonance times, plus a vectorised G1-over-time kernel used by the
sweep and ensemble engines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvariantViolationError
from .evolution import EvolutionKind, RotationPair
from .model import TWO_PI, NucleusParams
from .spin_algebra import require_hermitian, trace_inner

G1_TOLERANCE = 1e-9


@dataclass(frozen=True)
class G1Value:
    """A generalized Makhlin invariant together with the nuclear dimension."""

    value: float
    d: int


def makhlin_g1(rp: RotationPair) -> G1Value:
    """G1 = |Tr[r0† r1]|^2 / d^2, clamped to [0, 1] after a tolerance check."""
    tr = trace_inner(rp.r0, rp.r1)
    value = abs(tr) ** 2 / rp.d**2
    if value > 1.0 + G1_TOLERANCE:
        raise InvariantViolationError(f"G1 = {value} exceeds 1 beyond tolerance")
    return G1Value(value=min(max(value, 0.0), 1.0), d=rp.d)


def nuclear_otp(g1: G1Value) -> float:
    """One-tangling power with one nucleus bipartitioned from the rest."""
    return (g1.d / (3.0 * (1.0 + g1.d))) * (1.0 - g1.value)


def electronic_otp(g1s: Sequence[G1Value] | Iterable[G1Value]) -> float:
    """One-tangling power with the electron bipartitioned from all nuclei."""
    g1s = list(g1s)
    if not g1s:
        raise ValueError("electronic_otp needs at least one nucleus")
    log_prod = 0.0
    for g in g1s:
        log_prod += math.log((1.0 + g.d * g.value) / (1.0 + g.d))
    return (1.0 - math.exp(log_prod)) / 3.0


def nuclear_otp_max(d: int) -> float:
    """Upper bound d/(3(d+1)), attained at G1 = 0."""
    return d / (3.0 * (d + 1.0))


def _sin_over_sqrt(x: np.ndarray, t: np.ndarray) -> np.ndarray:
    """sin(sqrt(x)*t/2)/sqrt(x), with a series fallback at the removable zero."""
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    xt2 = x * t * t
    tiny = xt2 < 1e-8
    root = np.sqrt(np.where(tiny, 1.0, x))
    with np.errstate(invalid="ignore"):
        direct = np.sin(root * t / 2.0) / root
    series = (t / 2.0) * (1.0 - xt2 / 24.0 + xt2 * xt2 / 1920.0)
    return np.where(tiny, series, direct)


def analytic_g1(p: NucleusParams, t) -> float | np.ndarray:
    """Closed-form free-evolution G1 for a spin-3/2 nucleus.

    Exact for strain angles 0 and pi (where only the Delta-m = 2 part of
    the non-collinear term survives) and for a_nc = 0 at any angle; used
    as the fast analytic route next to the numerical invariant.

    Inputs are nu-values in MHz and t in us; the 2*pi conversion to
    angular frequencies happens here, once.  All square roots act on sums
    of squares, and the sin(sqrt(x) t/2)/sqrt(x) factors switch to a
    series when x*t^2 < 1e-8 (the expression has removable 0/0 points at
    degenerate parameters).
    """
    if abs(p.j - 1.5) > 1e-12:
        raise ValueError("analytic G1 is only available for spin j = 3/2")
    w = TWO_PI * p.nu_larmor
    a = TWO_PI * p.a
    dq = TWO_PI * p.delta_q_value
    anc = TWO_PI * p.a_nc
    t = np.asarray(t, dtype=float)

    anc2 = 3.0 * anc * anc
    x1 = anc2 + (a - 2.0 * (dq - w)) ** 2
    x2 = anc2 + (a + 2.0 * (dq + w)) ** 2
    x3 = anc2 + (a + 2.0 * (dq - w)) ** 2
    x4 = anc2 + (a - 2.0 * (dq + w)) ** 2

    c1 = np.cos(np.sqrt(x1) * t / 2.0) * np.cos(np.sqrt(x3) * t / 2.0)
    c2 = np.cos(np.sqrt(x2) * t / 2.0) * np.cos(np.sqrt(x4) * t / 2.0)
    c3 = (a * a + anc2 - 4.0 * (dq - w) ** 2) * _sin_over_sqrt(x1, t) * _sin_over_sqrt(x3, t)
    c4 = (-a * a - anc2 + 4.0 * (dq + w) ** 2) * _sin_over_sqrt(x2, t) * _sin_over_sqrt(x4, t)

    c13 = c1 - c3
    c24 = c2 + c4
    g1 = 0.25 * (c13 * c13 + c24 * c24 + 2.0 * c13 * c24 * np.cos(a * t))
    g1 = np.clip(g1, 0.0, 1.0)
    return float(g1) if g1.ndim == 0 else g1


def simplified_g1(a: float, t) -> float | np.ndarray:
    """Resonant-regime G1 = cos^2(a_ang t)(1 + cos(a_ang t))/2, a in MHz."""
    a_ang = TWO_PI * a
    t = np.asarray(t, dtype=float)
    c = np.cos(a_ang * t)
    g1 = 0.5 * c * c * (1.0 + c)
    return float(g1) if g1.ndim == 0 else g1


def resonance_times(a: float, k_max: int) -> list[float]:
    """Times where the resonant-regime G1 vanishes, both families merged.

    The families are (2k+1)*pi/a_ang and (2k+1)*pi/(2*a_ang) for
    k = 0..k_max, with a_ang = 2*pi*|a|.
    """
    if a == 0:
        raise ValueError("hyperfine coupling a must be nonzero")
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    a_ang = TWO_PI * abs(a)
    times = [(2 * k + 1) * math.pi / a_ang for k in range(k_max + 1)]
    times += [(2 * k + 1) * math.pi / (2.0 * a_ang) for k in range(k_max + 1)]
    return sorted(times)


def g1_series(
    h0: np.ndarray,
    h1: np.ndarray,
    total_times: np.ndarray,
    kind: EvolutionKind = EvolutionKind.FREE,
    n_iterations: int = 1,
) -> np.ndarray:
    """G1 over a grid of total evolution durations, from one eigen-decomposition.

    For CPMG the single-unit time is total/n_iterations at each grid point,
    matching a sequence of fixed iteration count swept in overall length.
    Values are clipped to [0, 1]; rounding can exceed 1 by ~1e-15.
    """
    h0 = require_hermitian(h0)
    h1 = require_hermitian(h1)
    d = h0.shape[0]
    total_times = np.asarray(total_times, dtype=float)
    l0, v0 = np.linalg.eigh(h0)
    l1, v1 = np.linalg.eigh(h1)

    if kind is EvolutionKind.FREE:
        if n_iterations != 1:
            raise ValueError("free evolution has n_iterations = 1")
        # Tr[r0† r1](t) = sum_mn |<v0_m|v1_n>|^2 e^{i(l0_m - l1_n) t}; only the
        # squared modulus is needed, so keep the real and imaginary parts
        # separate (cos/sin are ~2x cheaper than complex exp here)
        weights = (np.abs(v0.conj().T @ v1) ** 2).ravel()
        diffs = (l0[:, None] - l1[None, :]).ravel()
        angles = np.outer(total_times, diffs)
        tr_re = np.cos(angles) @ weights
        tr_im = np.sin(angles) @ weights
        return np.clip((tr_re**2 + tr_im**2) / d**2, 0.0, 1.0)
    unit = total_times / n_iterations

    def batch_u(lam, vec, ts):
        phases = np.exp(-1j * np.outer(ts, lam))
        return np.einsum("ij,tj,kj->tik", vec, phases, vec.conj(), optimize=True)

    q0 = batch_u(l0, v0, unit / 4.0)
    q1 = batch_u(l1, v1, unit / 4.0)
    r0 = q0 @ batch_u(l1, v1, unit / 2.0) @ q0
    r1 = q1 @ batch_u(l0, v0, unit / 2.0) @ q1
    n = n_iterations
    acc0 = np.broadcast_to(np.eye(d, dtype=complex), r0.shape).copy()
    acc1 = acc0.copy()
    while n:
        if n & 1:
            acc0 = acc0 @ r0
            acc1 = acc1 @ r1
        n >>= 1
        if n:
            r0 = r0 @ r0
            r1 = r1 @ r1
    tr = np.einsum("tij,tij->t", acc0.conj(), acc1)
    return np.clip(np.abs(tr) ** 2 / d**2, 0.0, 1.0)
