"""Dense matrix primitives and validated state containers.

Convention: subsystem A is always the left Kronecker factor, so a bipartite
operator indexes as ``M[(a, b), (a', b')]`` with row ``a * dim_b + b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
PVM_TOL = 1e-10
MAX_DIM = 64


class ValidationError(ValueError):
    """An operator failed a numerical validity check."""


class DimensionError(ValueError):
    """Operand shapes are inconsistent with the declared subsystem dimensions."""


def as_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise DimensionError(f"expected a 2-d matrix, got shape {m.shape}")
    return m


def _check_side(side: str) -> str:
    if side not in ("A", "B"):
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    return side


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Bipartite density operator on H_A (x) H_B.

    Construction validates hermiticity, unit trace and positivity; the
    stored matrix is the exact Hermitian part of the input.
    """

    matrix: np.ndarray
    dim_a: int
    dim_b: int

    def __post_init__(self):
        if self.dim_a < 1 or self.dim_b < 1:
            raise DimensionError("subsystem dimensions must be positive")
        n = self.dim_a * self.dim_b
        if n > MAX_DIM:
            raise DimensionError(f"total dimension {n} exceeds {MAX_DIM}")
        m = as_matrix(self.matrix)
        if m.shape != (n, n):
            raise DimensionError(
                f"matrix shape {m.shape} does not match dims ({self.dim_a}, {self.dim_b})"
            )
        herm_err = np.max(np.abs(m - m.conj().T))
        if herm_err > HERMITIAN_TOL:
            raise ValidationError(f"matrix is not Hermitian (max deviation {herm_err:.3g})")
        m = 0.5 * (m + m.conj().T)
        tr = np.trace(m).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValidationError(f"trace is {tr!r}, expected 1")
        lo = np.linalg.eigvalsh(m)[0]
        if lo < -PSD_TOL:
            raise ValidationError(f"matrix has negative eigenvalue {lo:.3g}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    @property
    def dims(self) -> tuple[int, int]:
        return self.dim_a, self.dim_b

    def reduced(self, keep: str) -> np.ndarray:
        """Reduced matrix of subsystem ``keep`` ('A' or 'B')."""
        return partial_trace(self, "B" if keep == "A" else "A")


@dataclass(frozen=True, eq=False)
class PVM:
    """Ordered complete set of orthogonal projectors on one subsystem."""

    projectors: tuple

    def __post_init__(self):
        ps = tuple(as_matrix(p) for p in self.projectors)
        if not ps:
            raise ValidationError("a PVM needs at least one projector")
        d = ps[0].shape[0]
        for p in ps:
            if p.shape != (d, d):
                raise DimensionError("projectors must be square and share one size")
        total = sum(ps)
        if np.max(np.abs(total - np.eye(d))) > PVM_TOL:
            raise ValidationError("projectors do not sum to the identity")
        for i, p in enumerate(ps):
            for j, q in enumerate(ps):
                expected = p if i == j else 0.0
                if np.max(np.abs(p @ q - expected)) > PVM_TOL:
                    raise ValidationError(f"projectors {i} and {j} are not orthogonal idempotents")
        for p in ps:
            p.setflags(write=False)
        object.__setattr__(self, "projectors", ps)

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0]

    def __len__(self) -> int:
        return len(self.projectors)

    def __iter__(self):
        return iter(self.projectors)

    @classmethod
    def from_basis(cls, vectors: Sequence) -> "PVM":
        """Rank-1 PVM from an orthonormal list of kets."""
        return cls(tuple(np.outer(v, np.conj(v)) for v in np.asarray(vectors, dtype=complex)))

    @classmethod
    def computational(cls, dim: int) -> "PVM":
        return cls.from_basis(np.eye(dim))


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def embed(op, side: str, dim_a: int, dim_b: int) -> np.ndarray:
    """Lift a local operator to the bipartite space (``op (x) 1`` or ``1 (x) op``)."""
    op = as_matrix(op)
    side = _check_side(side)
    d = dim_a if side == "A" else dim_b
    if op.shape != (d, d):
        raise DimensionError(f"operator shape {op.shape} does not fit side {side} of dim {d}")
    if side == "A":
        return np.kron(op, np.eye(dim_b))
    return np.kron(np.eye(dim_a), op)


def partial_trace(rho, side: str, dims: tuple[int, int] | None = None) -> np.ndarray:
    """Trace out subsystem ``side``; returns the reduced matrix of the other one.

    ``rho`` may be a :class:`DensityMatrix` or a raw square array, in which
    case ``dims`` is required.
    """
    side = _check_side(side)
    if isinstance(rho, DensityMatrix):
        m, (da, db) = rho.matrix, rho.dims
    else:
        if dims is None:
            raise DimensionError("dims are required for a raw matrix")
        m, (da, db) = as_matrix(rho), dims
    if m.shape != (da * db, da * db):
        raise DimensionError(f"matrix shape {m.shape} does not match dims ({da}, {db})")
    t = m.reshape(da, db, da, db)
    if side == "B":
        return np.einsum("ijkj->ik", t)
    return np.einsum("ijil->jl", t)


def hermitian_eigenvalues(m) -> np.ndarray:
    """Ascending real spectrum of a Hermitian matrix."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionError("matrix must be square")
    err = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if err > HERMITIAN_TOL:
        raise ValidationError(f"matrix is not Hermitian (max deviation {err:.3g})")
    return np.linalg.eigvalsh(0.5 * (m + m.conj().T))


def clip_spectrum(evals: np.ndarray) -> np.ndarray:
    """Zero out PSD round-off; anything below ``-PSD_TOL`` is a hard error."""
    evals = np.asarray(evals, dtype=float)
    if evals.size and evals.min() < -PSD_TOL:
        raise ValidationError(f"negative eigenvalue {evals.min():.3g} in a state spectrum")
    return np.clip(evals, 0.0, None)
