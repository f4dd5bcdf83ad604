"""Brute-force one-tangling-power oracles for small systems.

Two independent routes validate the closed-form expressions: the
Choi-vectorised definition (enumerating every unordered bipartition of
the copy system) and Monte-Carlo averaging of the one-tangle over random
product states.  A third check compares the Haar average of
|<psi|r0† r1|psi>|^2 against its closed form (d + |Tr[r0† r1]|^2)/(d(d+1)).

These stay deliberately independent of the formula modules: partial
traces are computed by index reshaping on the vectorised unitary, never
through the Makhlin-invariant shortcut they are meant to test.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ResourceLimitError
from .evolution import RotationPair

MAX_TOTAL_DIM = 256
UNITARITY_ATOL = 1e-8
DEFAULT_SHARD = 4096


@dataclass(frozen=True)
class SystemDims:
    """Subsystem dimensions, electron first (dims[0] = 2)."""

    dims: tuple[int, ...]

    def __post_init__(self):
        if len(self.dims) < 2:
            raise ValueError("need the electron plus at least one nucleus")
        if self.dims[0] != 2:
            raise ValueError("subsystem 0 is the electron and must have dimension 2")
        if any(d < 2 for d in self.dims):
            raise ValueError("all subsystem dimensions must be >= 2")

    @property
    def total(self) -> int:
        return int(np.prod(self.dims))

    @property
    def n_subsystems(self) -> int:
        return len(self.dims)


class McEstimate(NamedTuple):
    mean: float
    stderr: float


class PedersenResult(NamedTuple):
    mc: float
    mc_stderr: float
    closed_form: float


def block_unitary(rp: RotationPair) -> np.ndarray:
    """|0><0| (x) r0 + |1><1| (x) r1 as a dense 2d x 2d matrix."""
    d = rp.d
    u = np.zeros((2 * d, 2 * d), dtype=complex)
    u[:d, :d] = rp.r0
    u[d:, d:] = rp.r1
    return u


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary from the QR decomposition of a Ginibre matrix."""
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def _check_unitary(u: np.ndarray, total: int) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.shape != (total, total):
        raise ValueError(f"unitary shape {u.shape} does not match total dimension {total}")
    defect = np.linalg.norm(u @ u.conj().T - np.eye(total)) / np.sqrt(total)
    if defect > UNITARITY_ATOL:
        raise ValueError(f"input is not unitary (defect {defect:.3e})")
    return u


def choi_otp(u: np.ndarray, dims: SystemDims, q: int) -> float:
    """One-tangling power of u with subsystem q isolated, by direct definition.

    The unitary is vectorised with normalisation 1/sqrt(prod d_i) into a
    pure state on system (x) copy; for each of the 2**(n+1) subsets of the
    copy factors, the purity of the state reduced onto {q} plus that
    subset is accumulated, and
    epsilon = 1 - (prod_i d_i/(d_i+1)) * sum of purities.
    """
    n_sub = dims.n_subsystems
    if not 0 <= q < n_sub:
        raise ValueError(f"subsystem index {q} out of range")
    total = dims.total
    if total > MAX_TOTAL_DIM:
        raise ResourceLimitError(f"total dimension {total} exceeds oracle limit {MAX_TOTAL_DIM}")
    u = _check_unitary(u, total)

    shape = dims.dims + dims.dims  # real factors then copy factors
    psi = (u / np.sqrt(total)).reshape(shape)

    purity_sum = 0.0
    for mask in range(1 << n_sub):
        copy_kept = [n_sub + i for i in range(n_sub) if mask >> i & 1]
        kept = [q] + copy_kept
        traced = [ax for ax in range(2 * n_sub) if ax not in kept]
        mat = np.transpose(psi, kept + traced).reshape(
            int(np.prod([shape[ax] for ax in kept])), -1
        )
        if mat.shape[0] <= mat.shape[1]:
            gram = mat @ mat.conj().T
        else:
            gram = mat.conj().T @ mat
        purity_sum += float(np.sum(np.abs(gram) ** 2))

    prefactor = np.prod([d / (d + 1.0) for d in dims.dims])
    return float(1.0 - prefactor * purity_sum)


def _random_product_states(dims: SystemDims, count: int, rng: np.random.Generator) -> np.ndarray:
    """count product states, each local factor Haar-random (normalised Gaussian)."""
    psi = np.ones((count, 1), dtype=complex)
    for d in dims.dims:
        z = rng.standard_normal((count, d)) + 1j * rng.standard_normal((count, d))
        z /= np.linalg.norm(z, axis=1, keepdims=True)
        psi = (psi[:, :, None] * z[:, None, :]).reshape(count, -1)
    return psi


def _subsystem_purities(psi: np.ndarray, dims: SystemDims, q: int) -> np.ndarray:
    d_pre = int(np.prod(dims.dims[:q], initial=1))
    d_q = dims.dims[q]
    d_post = int(np.prod(dims.dims[q + 1 :], initial=1))
    m = psi.reshape(-1, d_pre, d_q, d_post).transpose(0, 2, 1, 3).reshape(-1, d_q, d_pre * d_post)
    gram = m @ m.conj().transpose(0, 2, 1)
    return np.sum(np.abs(gram) ** 2, axis=(1, 2)).real


def _mc_shard(
    u: np.ndarray, dims: SystemDims, q: int, seed: int, shard_index: int, count: int
) -> np.ndarray:
    rng = np.random.default_rng([seed, shard_index])
    psi = _random_product_states(dims, count, rng)
    out = psi @ u.T
    return 1.0 - _subsystem_purities(out, dims, q)


def mc_otp(
    u: np.ndarray,
    dims: SystemDims,
    q: int,
    samples: int,
    seed: int,
    shard_size: int = DEFAULT_SHARD,
) -> McEstimate:
    """Monte-Carlo one-tangling power: mean one-tangle over random product states.

    Sampling is split into fixed-size shards whose generators are seeded by
    (seed, shard index), so the estimate is bit-reproducible regardless of
    how shards are scheduled.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    total = dims.total
    if total > MAX_TOTAL_DIM:
        raise ResourceLimitError(f"total dimension {total} exceeds oracle limit {MAX_TOTAL_DIM}")
    u = _check_unitary(u, total)
    if not 0 <= q < dims.n_subsystems:
        raise ValueError(f"subsystem index {q} out of range")

    tangles = []
    remaining, shard_index = samples, 0
    while remaining > 0:
        count = min(shard_size, remaining)
        tangles.append(_mc_shard(u, dims, q, seed, shard_index, count))
        remaining -= count
        shard_index += 1
    tau = np.concatenate(tangles)
    stderr = float(tau.std(ddof=1) / np.sqrt(samples)) if samples > 1 else 0.0
    return McEstimate(mean=float(tau.mean()), stderr=stderr)


def pedersen_check(rp: RotationPair, samples: int, seed: int) -> PedersenResult:
    """Haar average of |<psi|r0† r1|psi>|^2 versus its closed form.

    The closed form (d + |Tr[r0† r1]|^2)/(d(d+1)) is the average-fidelity
    identity behind the nuclear one-tangling power formula.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    d = rp.d
    v = rp.r0.conj().T @ rp.r1
    rng = np.random.default_rng([seed, 0])
    z = rng.standard_normal((samples, d)) + 1j * rng.standard_normal((samples, d))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    amps = np.einsum("bi,ij,bj->b", z.conj(), v, z, optimize=True)
    vals = np.abs(amps) ** 2
    stderr = float(vals.std(ddof=1) / np.sqrt(samples)) if samples > 1 else 0.0
    closed = (d + abs(np.trace(v)) ** 2) / (d * (d + 1.0))
    return PedersenResult(mc=float(vals.mean()), mc_stderr=stderr, closed_form=float(closed))
