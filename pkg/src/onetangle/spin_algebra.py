"""Dense complex linear algebra for small Hermitian spin systems.

Angular-momentum operators for arbitrary half-integer spin, Hermitian
matrix exponentials via eigen-decomposition, and the trace inner product
Tr[a† b].  Everything here works on plain complex128 ndarrays and is
side-effect free.

Unit conventions: Hamiltonians are expressed in angular frequency
(rad/us), times in us, so exp(-i*h*t) is dimensionless.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_DIM = 32  # dense-kernel limit; everything in this package is tiny

HERMITICITY_RTOL = 1e-10


@dataclass(frozen=True)
class SpinOps:
    """Spin operators for a single spin-j particle, z-basis ordered m = j..-j."""

    j: float
    dim: int
    ix: np.ndarray
    iy: np.ndarray
    iz: np.ndarray


def _check_half_integer(j: float) -> int:
    two_j = 2.0 * j
    if j <= 0 or abs(two_j - round(two_j)) > 1e-12:
        raise ValueError(f"spin must be a positive half-integer, got j={j}")
    return int(round(two_j))


def spin_operators(j: float) -> SpinOps:
    """Build ix, iy, iz for spin j from the ladder-operator construction.

    The basis is ordered by descending magnetic quantum number, so iz is
    diag(j, j-1, ..., -j).  Raising-operator elements are
    sqrt(j(j+1) - m(m+1)).
    """
    two_j = _check_half_integer(j)
    dim = two_j + 1
    ms = j - np.arange(dim)  # descending: j, j-1, ..., -j
    iz = np.diag(ms).astype(complex)
    # <m+1|I+|m> for m = ms[1:]; with descending order I+ sits above the diagonal
    raise_elems = np.sqrt(j * (j + 1) - ms[1:] * (ms[1:] + 1))
    iplus = np.zeros((dim, dim), dtype=complex)
    iplus[np.arange(dim - 1), np.arange(1, dim)] = raise_elems
    ix = (iplus + iplus.conj().T) / 2
    iy = (iplus - iplus.conj().T) / 2j
    return SpinOps(j=float(j), dim=dim, ix=ix, iy=iy, iz=iz)


def _as_square_complex(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(float))):
        raise ValueError("matrix entries must be finite")
    return m


def require_hermitian(h: np.ndarray, rtol: float = HERMITICITY_RTOL) -> np.ndarray:
    """Validate (and return) a finite square Hermitian matrix."""
    h = _as_square_complex(h)
    scale = max(np.linalg.norm(h), 1.0)
    dev = np.linalg.norm(h - h.conj().T)
    if dev > rtol * scale:
        raise ValueError(
            f"matrix is not Hermitian within rtol={rtol} (relative deviation {dev / scale:.3e})"
        )
    return h


def hermitian_expm(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i*h*t) for Hermitian h, via h = V diag(lam) V†.

    Exactly unitary up to rounding for any size of h*t, which matters for
    the GHz-frequency times microsecond products used in sweeps.
    """
    h = require_hermitian(h)
    if h.shape[0] > MAX_DIM:
        raise ValueError(f"dimension {h.shape[0]} exceeds dense limit {MAX_DIM}")
    if t == 0.0:
        return np.eye(h.shape[0], dtype=complex)
    lam, vec = np.linalg.eigh(h)
    phases = np.exp(-1j * lam * t)
    return (vec * phases) @ vec.conj().T


def trace_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Tr[a† b] = sum_ij conj(a_ij) b_ij."""
    a = _as_square_complex(a)
    b = _as_square_complex(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def unitarity_defect(u: np.ndarray) -> float:
    """Frobenius norm of u u† - I."""
    u = np.asarray(u, dtype=complex)
    eye = np.eye(u.shape[0])
    return float(np.linalg.norm(u @ u.conj().T - eye))
