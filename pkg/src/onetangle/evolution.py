"""Conditional nuclear rotations for free evolution and CPMG decoupling.

Free evolution gives (r0, r1) = (exp(-i h0 t), exp(-i h1 t)).  One CPMG
unit of duration t is the pulse pattern t/4 - pi - t/2 - pi - t/4 with
ideal instantaneous pi pulses; the pulses swap which block generates the
middle interval, so the conditional rotations close over the blocks and
the full electron (x) nucleus matrix is never materialised.  The (-i)
factors of the two pi pulses cancel in pairs and are dropped.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .spin_algebra import hermitian_expm, unitarity_defect


class EvolutionKind(enum.Enum):
    FREE = "free"
    CPMG = "cpmg"


@dataclass(frozen=True)
class EvolutionSpec:
    """Which unitary to build.

    ``duration`` is the free-evolution time, or the single-unit time t of
    one CPMG cycle; ``n_iterations`` repeats the cycle, for a total
    duration n_iterations * duration.
    """

    kind: EvolutionKind
    duration: float
    n_iterations: int = 1

    def __post_init__(self):
        if self.duration <= 0:
            raise ValueError("duration must be positive")
        if self.n_iterations < 1:
            raise ValueError("n_iterations must be >= 1")
        if self.kind is EvolutionKind.FREE and self.n_iterations != 1:
            raise ValueError("free evolution has n_iterations = 1")

    @property
    def total_duration(self) -> float:
        return self.duration * self.n_iterations


@dataclass(frozen=True)
class RotationPair:
    """The two conditional nuclear rotations of a block-diagonal unitary."""

    r0: np.ndarray
    r1: np.ndarray
    d: int

    def __post_init__(self):
        for r in (self.r0, self.r1):
            if r.shape != (self.d, self.d):
                raise ValueError("rotation shape does not match dimension")
            if unitarity_defect(r) > 1e-9:
                raise ValueError("rotation is not unitary within 1e-9")


def matrix_power_int(m: np.ndarray, n: int) -> np.ndarray:
    """m**n for integer n >= 0 by repeated squaring (keeps unitarity drift low)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    result = np.eye(m.shape[0], dtype=complex)
    base = m
    while n:
        if n & 1:
            result = result @ base
        n >>= 1
        if n:
            base = base @ base
    return result


def free_rotations(h0: np.ndarray, h1: np.ndarray, t: float) -> RotationPair:
    """Free-evolution pair exp(-i h0 t), exp(-i h1 t)."""
    if t < 0:
        raise ValueError("t must be >= 0")
    r0 = hermitian_expm(h0, t)
    r1 = hermitian_expm(h1, t)
    return RotationPair(r0=r0, r1=r1, d=r0.shape[0])


def cpmg_rotations(h0: np.ndarray, h1: np.ndarray, t: float, n: int = 1) -> RotationPair:
    """n repetitions of one CPMG unit of duration t (total duration n*t).

    Single unit: r0 = R0(t/4) R1(t/2) R0(t/4) and r1 with the roles of the
    blocks exchanged; repetitions raise each conditional rotation to the
    n-th power.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    if n < 1:
        raise ValueError("n must be >= 1")
    q0 = hermitian_expm(h0, t / 4.0)
    q1 = hermitian_expm(h1, t / 4.0)
    m0 = hermitian_expm(h1, t / 2.0)
    m1 = hermitian_expm(h0, t / 2.0)
    r0 = q0 @ m0 @ q0
    r1 = q1 @ m1 @ q1
    if n > 1:
        r0 = matrix_power_int(r0, n)
        r1 = matrix_power_int(r1, n)
    return RotationPair(r0=r0, r1=r1, d=r0.shape[0])


def rotations(h0: np.ndarray, h1: np.ndarray, spec: EvolutionSpec) -> RotationPair:
    """Dispatch on the evolution kind."""
    if spec.kind is EvolutionKind.FREE:
        return free_rotations(h0, h1, spec.duration)
    return cpmg_rotations(h0, h1, spec.duration, spec.n_iterations)
