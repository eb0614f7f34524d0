"""Shannon and von Neumann information functionals, all in nats."""

from __future__ import annotations

import numpy as np
from scipy.special import xlogy

from .linalg import (
    DensityMatrix,
    DimensionError,
    PSD_TOL,
    ValidationError,
    as_matrix,
    clip_spectrum,
    hermitian_eigenvalues,
    partial_trace,
)

PROB_TOL = 1e-12


def _check_probs(p: np.ndarray) -> np.ndarray:
    if np.any(p < 0):
        raise ValidationError("probabilities must be non-negative")
    if abs(p.sum() - 1.0) > PROB_TOL:
        raise ValidationError(f"probabilities sum to {p.sum()!r}, expected 1")
    return p


def _plogp(p: np.ndarray) -> float:
    p = p[p > 0]
    return float(-np.sum(p * np.log(p)))


def shannon_entropy(p) -> float:
    """-sum p ln p with 0 ln 0 = 0."""
    p = _check_probs(np.asarray(p, dtype=float).ravel())
    return _plogp(p)


def joint_distribution(probs) -> np.ndarray:
    """Validate a 2-d joint probability table ``p[x, y]``."""
    p = np.asarray(probs, dtype=float)
    if p.ndim != 2:
        raise DimensionError("a joint distribution is a 2-d table")
    return _check_probs(p)


def classical_mutual_info_I(probs) -> float:
    """H(X) + H(Y) - H(X,Y)."""
    p = joint_distribution(probs)
    return _plogp(p.sum(axis=1)) + _plogp(p.sum(axis=0)) - _plogp(p.ravel())


def classical_mutual_info_J(probs) -> float:
    """H(X) - sum_y p_y H(X|y), skipping outcomes with p_y = 0."""
    p = joint_distribution(probs)
    py = p.sum(axis=0)
    cond = sum(py[y] * _plogp(p[:, y] / py[y]) for y in range(p.shape[1]) if py[y] > 0)
    return _plogp(p.sum(axis=1)) - cond


def von_neumann_entropy(rho) -> float:
    """-Tr rho ln rho for a :class:`DensityMatrix` or a valid reduced matrix."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else as_matrix(rho)
    if not isinstance(rho, DensityMatrix) and abs(np.trace(m).real - 1.0) > 1e-9:
        raise ValidationError("state must have unit trace")
    return _plogp(clip_spectrum(hermitian_eigenvalues(m)))


def quantum_mutual_info(rho: DensityMatrix) -> float:
    """S(rho_A) + S(rho_B) - S(rho)."""
    return (
        von_neumann_entropy(partial_trace(rho, "B"))
        + von_neumann_entropy(partial_trace(rho, "A"))
        - von_neumann_entropy(rho)
    )


def mutual_info_gap(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """I(rho) - I(sigma); the entropic 'distance' used by the discord family."""
    if rho.dims != sigma.dims:
        raise DimensionError(f"dimension mismatch {rho.dims} vs {sigma.dims}")
    return quantum_mutual_info(rho) - quantum_mutual_info(sigma)


# Batched helpers for the optimizer hot path: ``ms`` has shape (..., n, n).

def _spectrum_stack(ms: np.ndarray) -> np.ndarray:
    if ms.shape[-1] == 2:
        # closed form for qubits; much cheaper than LAPACK on tiny stacks
        a, d = ms[..., 0, 0].real, ms[..., 1, 1].real
        half_gap = np.sqrt(0.25 * (a - d) ** 2 + np.abs(ms[..., 0, 1]) ** 2)
        mid = 0.5 * (a + d)
        return np.stack([mid - half_gap, mid + half_gap], axis=-1)
    return np.linalg.eigvalsh(ms)


def entropy_stack(ms: np.ndarray) -> np.ndarray:
    ev = _spectrum_stack(ms)
    if ev.min() < -PSD_TOL:
        raise ValidationError(f"negative eigenvalue {ev.min():.3g} in a state spectrum")
    ev = np.maximum(ev, 0.0)
    return -xlogy(ev, ev).sum(axis=-1)


def mutual_info_stack(ms: np.ndarray, dim_a: int, dim_b: int, s_a=None) -> np.ndarray:
    """I for a stack of states; pass ``s_a`` when the A marginal is known to be fixed."""
    lead = ms.shape[:-2]
    t = ms.reshape(*lead, dim_a, dim_b, dim_a, dim_b)
    if s_a is None:
        s_a = entropy_stack(np.einsum("...ijkj->...ik", t))
    rho_b = np.einsum("...ijil->...jl", t)
    return s_a + entropy_stack(rho_b) - entropy_stack(ms)
