"""Measurement-induced maps on bipartite states.

All maps act on one subsystem (``side``) and leave the other untouched.
Strength parameters ``eps`` live in the closed interval [0, 1]; the
endpoints give the identity channel and full projective dephasing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import PVM, DensityMatrix, DimensionError, ValidationError, _check_side, embed

PROB_FLOOR = 1e-14


class ZeroProbabilityError(ValueError):
    """A collapse was requested on an outcome that has (numerically) zero probability."""


@dataclass(frozen=True)
class BlochAngles:
    """Polar and azimuthal angles of the '+' direction of a qubit measurement."""

    theta: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise ValueError("Bloch angles must be finite")
        if not (0.0 <= self.theta <= math.pi):
            raise ValueError(f"theta={self.theta} outside [0, pi]")
        if not (0.0 <= self.phi < 2 * math.pi):
            raise ValueError(f"phi={self.phi} outside [0, 2pi)")

    @classmethod
    def wrapped(cls, theta: float, phi: float) -> "BlochAngles":
        """Clamp theta into [0, pi] and wrap phi into [0, 2pi)."""
        phi = math.fmod(phi, 2 * math.pi)
        if phi < 0:
            phi += 2 * math.pi
        if phi >= 2 * math.pi:
            phi = 0.0
        return cls(min(max(theta, 0.0), math.pi), phi)


def check_strength(eps: float) -> float:
    eps = float(eps)
    if not (0.0 <= eps <= 1.0):
        raise ValueError(f"measurement strength {eps} outside [0, 1]")
    return eps


def bloch_kets(theta, phi) -> np.ndarray:
    """Kets |+>, |-> for (arrays of) angles; shape (..., 2, 2) as [ket, component]."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    ph = np.exp(1j * phi)
    plus = np.stack([c + 0j, ph * s], axis=-1)
    minus = np.stack([-s + 0j, ph * c], axis=-1)
    return np.stack([plus, minus], axis=-2)


def bloch_projectors(theta, phi) -> np.ndarray:
    """Stack of projector pairs with shape (..., 2, 2, 2): [outcome, row, col]."""
    k = bloch_kets(theta, phi)
    return np.einsum("...ki,...kj->...kij", k, k.conj())


def pvm_from_bloch(angles: BlochAngles) -> PVM:
    return PVM(tuple(bloch_projectors(angles.theta, angles.phi)))


def _local_ops(pvm: PVM, side: str, rho: DensityMatrix) -> list[np.ndarray]:
    side = _check_side(side)
    d = rho.dim_a if side == "A" else rho.dim_b
    if pvm.dim != d:
        raise DimensionError(f"PVM of dim {pvm.dim} cannot act on side {side} of dim {d}")
    return [embed(p, side, rho.dim_a, rho.dim_b) for p in pvm]


def _state(m: np.ndarray, like: DensityMatrix) -> DensityMatrix:
    return DensityMatrix(m, like.dim_a, like.dim_b)


def collapse(rho: DensityMatrix, pvm: PVM, outcome: int, side: str = "B"):
    """Post-measurement state and probability of ``outcome``.

    Returns
    -------
    (DensityMatrix, float)
    """
    ops = _local_ops(pvm, side, rho)
    proj = ops[outcome]
    unnorm = proj @ rho.matrix @ proj
    p = float(np.trace(unnorm).real)
    if p <= PROB_FLOOR:
        raise ZeroProbabilityError(f"outcome {outcome} has probability {p:.3g}")
    return _state(unnorm / p, rho), p


def weak_collapse(rho: DensityMatrix, pvm: PVM, outcome: int, eps: float, side: str = "B") -> DensityMatrix:
    eps = check_strength(eps)
    post, _ = collapse(rho, pvm, outcome, side)
    return _state((1 - eps) * rho.matrix + eps * post.matrix, rho)


def _dephase(m: np.ndarray, ops) -> np.ndarray:
    return sum(p @ m @ p for p in ops)


def unrevealed_projective(rho: DensityMatrix, pvm: PVM, side: str = "B") -> DensityMatrix:
    """Non-selective projective measurement: sum_b P_b rho P_b."""
    return _state(_dephase(rho.matrix, _local_ops(pvm, side, rho)), rho)


def monitoring(rho: DensityMatrix, pvm: PVM, eps: float, side: str = "B") -> DensityMatrix:
    """(1 - eps) rho + eps Phi(rho)."""
    eps = check_strength(eps)
    phi = _dephase(rho.matrix, _local_ops(pvm, side, rho))
    return _state((1 - eps) * rho.matrix + eps * phi, rho)


def monitoring_power(rho: DensityMatrix, pvm: PVM, eps: float, n: int, side: str = "B") -> DensityMatrix:
    """n-fold monitoring in closed form: (1-eps)^n rho + [1 - (1-eps)^n] Phi(rho)."""
    eps = check_strength(eps)
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return rho
    keep = (1 - eps) ** n
    phi = _dephase(rho.matrix, _local_ops(pvm, side, rho))
    return _state(keep * rho.matrix + (1 - keep) * phi, rho)


def dichotomic_operators(x: float, pvm: PVM) -> tuple[np.ndarray, np.ndarray]:
    """Weak-measurement pair P_+(x), P_-(x) built on a two-outcome PVM."""
    if len(pvm) != 2:
        raise ValidationError(f"dichotomic operators need exactly 2 projectors, got {len(pvm)}")
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    t = math.tanh(x)
    p0, p1 = pvm.projectors
    lo, hi = math.sqrt((1 - t) / 2), math.sqrt((1 + t) / 2)
    return lo * p0 + hi * p1, hi * p0 + lo * p1


def dichotomic_channel(rho: DensityMatrix, x: float, pvm: PVM, side: str = "B") -> DensityMatrix:
    side = _check_side(side)
    ops = [embed(p, side, rho.dim_a, rho.dim_b) for p in dichotomic_operators(x, pvm)]
    return _state(sum(k @ rho.matrix @ k.conj().T for k in ops), rho)


def dichotomic_strength(x: float) -> float:
    """Monitoring strength equivalent to the dichotomic channel: 1 - sech(x)."""
    return 1.0 - 1.0 / math.cosh(x)


def stinespring_dilation(pvm: PVM, eps: float, dims: tuple[int, int], side: str = "B") -> np.ndarray:
    """Isometry V: H_AB -> H_AB (x) H_X whose ancilla-traced action is monitoring.

    Kraus operators are sqrt(1-eps) 1 and sqrt(eps) P_b; ancilla index k
    labels the k-th Kraus operator, with k = 0 the 'no click' branch.
    """
    eps = check_strength(eps)
    dim_a, dim_b = dims
    d = dim_a if _check_side(side) == "A" else dim_b
    if pvm.dim != d:
        raise DimensionError(f"PVM of dim {pvm.dim} cannot act on side {side} of dim {d}")
    n = dim_a * dim_b
    kraus = [math.sqrt(1 - eps) * np.eye(n)]
    kraus += [math.sqrt(eps) * embed(p, side, dim_a, dim_b) for p in pvm]
    dx = len(kraus)
    v = np.zeros((n * dx, n), dtype=complex)
    for k, op in enumerate(kraus):
        v[k::dx] = op
    return v


def trace_out_ancilla(v: np.ndarray, rho: DensityMatrix) -> DensityMatrix:
    """Tr_X[V rho V^dagger] for an isometry produced by :func:`stinespring_dilation`."""
    n = rho.dim
    dx = v.shape[0] // n
    big = (v @ rho.matrix @ v.conj().T).reshape(n, dx, n, dx)
    return _state(np.einsum("ikjk->ij", big), rho)


# Batched forms used by the optimizer: ``projs`` has shape (N, K, d, d).

def embed_stack(projs: np.ndarray, side: str, dim_a: int, dim_b: int) -> np.ndarray:
    """Lift stacked local operators (..., d, d) to the bipartite space."""
    lead = projs.shape[:-2]
    if side == "B":
        big = np.einsum("ij,...ab->...iajb", np.eye(dim_a), projs)
    else:
        big = np.einsum("...ij,ab->...iajb", projs, np.eye(dim_b))
    n = dim_a * dim_b
    return big.reshape(*lead, n, n)


def dephase_stack(m: np.ndarray, projs: np.ndarray, side: str, dim_a: int, dim_b: int) -> np.ndarray:
    """Phi applied to ``m`` (shape (n, n) or (N, n, n)) for each of N PVMs (N, K, d, d)."""
    ops = embed_stack(projs, side, dim_a, dim_b)
    if m.ndim == 3:
        m = m[:, None]
    return (ops @ m @ ops).sum(axis=-3)


def monitoring_stack(m: np.ndarray, projs: np.ndarray, eps: float, side: str, dim_a: int, dim_b: int) -> np.ndarray:
    return (1 - eps) * m + eps * dephase_stack(m, projs, side, dim_a, dim_b)
