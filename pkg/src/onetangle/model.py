"""Single-nucleus Hamiltonian blocks for the strained-dot central-spin model.

Each nucleus couples to the central electron through a collinear hyperfine
term, a diagonal quadrupolar shift, and a strain-induced non-collinear
hyperfine term.  Conditioned on the electron state the nuclear Hamiltonian
is one of two Hermitian blocks h0/h1; the electron Zeeman term commutes
with everything else and is dropped (it only contributes a global phase
per block).

All user-facing frequencies are plain frequencies nu in MHz; the blocks
are returned in angular units (rad/us), i.e. omega = 2*pi*nu.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .spin_algebra import spin_operators

TWO_PI = 2.0 * math.pi

_HIERARCHY_WARNING = (
    "nucleus parameters violate the assumed hierarchy "
    "nu_larmor >> |a| >> |delta_q|, |a_nc|; results remain exact but the "
    "degeneracy-based interpretation may not apply"
)


class NcVariant(enum.Enum):
    """Which non-collinear hyperfine term enters the blocks."""

    QUADRUPOLAR = "quadrupolar"  # cos^2(th)(Ix^2-Iy^2) + sin(2 th)(Iz Ix + Ix Iz)
    TRANSVERSE_X = "transverse_x"  # plain Ix coupling


@dataclass(frozen=True)
class NucleusParams:
    """Physical parameters of one nucleus.

    Frequencies are nu-values in MHz.  Exactly one of ``delta_q`` /
    ``omega_q`` must be given; with ``omega_q`` the quadrupolar shift is
    derived from the strain angle via :func:`delta_q_from_strain`.
    ``nu_zeeman_e`` is accepted for bookkeeping only and never enters the
    dynamics.
    """

    j: float
    nu_larmor: float
    a: float
    a_nc: float = 0.0
    delta_q: float | None = None
    omega_q: float | None = None
    theta: float = 0.0
    species: str = ""
    nu_zeeman_e: float | None = None
    warn_on_hierarchy: bool = field(default=True, repr=False)

    def __post_init__(self):
        if (self.delta_q is None) == (self.omega_q is None):
            raise ValueError("exactly one of delta_q / omega_q must be given")
        for name in ("nu_larmor", "a", "a_nc", "theta"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.j < 0.5:
            raise ValueError(f"j must be >= 1/2, got {self.j}")
        if self.warn_on_hierarchy and not self._hierarchy_ok():
            warnings.warn(_HIERARCHY_WARNING, stacklevel=2)

    def _hierarchy_ok(self) -> bool:
        w, a = abs(self.nu_larmor), abs(self.a)
        small = max(abs(self.delta_q_value), abs(self.a_nc))
        return w > a > small or (a == 0.0 and small == 0.0)

    @property
    def delta_q_value(self) -> float:
        """Quadrupolar shift in MHz, derived from (omega_q, theta) if needed."""
        if self.delta_q is not None:
            return self.delta_q
        return delta_q_from_strain(self.omega_q, self.theta)

    @property
    def dim(self) -> int:
        return int(round(2 * self.j)) + 1


def delta_q_from_strain(omega_q: float, theta: float) -> float:
    """Quadrupolar level shift omega_q*(sin^2(theta) - cos^2(theta)/2)."""
    s, c = math.sin(theta), math.cos(theta)
    return omega_q * (s * s - 0.5 * c * c)


def noncollinear_from_quadrupolar(a: float, omega_q: float, nu_larmor: float) -> float:
    """Convenience estimate a*omega_q/(2*nu_larmor) of the non-collinear strength.

    Provided for parameter studies only; ``NucleusParams.a_nc`` is always an
    independent input.
    """
    if nu_larmor == 0:
        raise ValueError("nu_larmor must be nonzero")
    return a * omega_q / (2.0 * nu_larmor)


def noncollinear_operator(j: float, theta: float, variant: NcVariant) -> np.ndarray:
    """The dimensionless operator multiplied by -+ a_nc/2 in the blocks."""
    ops = spin_operators(j)
    if variant is NcVariant.TRANSVERSE_X:
        return ops.ix
    c2 = math.cos(theta) ** 2
    s2 = math.sin(2.0 * theta)
    return c2 * (ops.ix @ ops.ix - ops.iy @ ops.iy) + s2 * (ops.iz @ ops.ix + ops.ix @ ops.iz)


def build_blocks(
    p: NucleusParams, variant: NcVariant = NcVariant.QUADRUPOLAR
) -> tuple[np.ndarray, np.ndarray]:
    """Conditional nuclear Hamiltonian blocks (h0, h1) in rad/us.

    h0 is the block for electron state |0> (upper signs): the collinear
    term enters as +a/2 * Iz and the non-collinear term as -a_nc/2 times
    the variant operator; h1 flips both signs.  The Zeeman and quadrupolar
    terms are common to both blocks.
    """
    ops = spin_operators(p.j)
    w = TWO_PI * p.nu_larmor
    a = TWO_PI * p.a
    dq = TWO_PI * p.delta_q_value
    anc = TWO_PI * p.a_nc
    common = w * ops.iz + dq * (ops.iz @ ops.iz)
    nc = noncollinear_operator(p.j, p.theta, variant)
    h0 = common + (a / 2.0) * ops.iz - (anc / 2.0) * nc
    h1 = common - (a / 2.0) * ops.iz + (anc / 2.0) * nc
    return h0, h1
