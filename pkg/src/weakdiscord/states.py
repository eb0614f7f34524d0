"""State factories and the textual state-spec mini-language.

Spec grammar (used by the CLI)::

    werner:mu=0.5
    bell:index=0                     # 0: singlet, 1: psi+, 2: phi-, 3: phi+
    product:a=<state>,b=<state>      # local states: 0, 1, +, -, mixed
    qc:weights=0.5/0.5,a=0/+         # quantum-classical, computational B basis
    cc:weights=0.5/0/0/0.5           # classical-classical, computational bases
    random:dA=2,dB=2,rank=4,seed=42
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linalg import PVM, DensityMatrix, DimensionError, ValidationError, as_matrix

SINGLET = np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2)

_BELL = {
    0: SINGLET,
    1: np.array([0, 1, 1, 0], dtype=complex) / math.sqrt(2),
    2: np.array([1, 0, 0, -1], dtype=complex) / math.sqrt(2),
    3: np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2),
}

_QUBIT_STATES = {
    "0": np.diag([1.0, 0.0]),
    "1": np.diag([0.0, 1.0]),
    "+": np.full((2, 2), 0.5),
    "-": np.array([[0.5, -0.5], [-0.5, 0.5]]),
    "mixed": np.eye(2) / 2,
}


class StateSpecError(ValueError):
    """A state spec string could not be parsed."""


def _pure(psi: np.ndarray) -> np.ndarray:
    return np.outer(psi, psi.conj())


def werner_singlet(mu: float) -> DensityMatrix:
    """(1 - mu) 1/4 + mu |s><s| with |s> = (|01> - |10>)/sqrt(2)."""
    if not 0.0 <= mu <= 1.0:
        raise ValueError(f"mu={mu} outside [0, 1]")
    return DensityMatrix((1 - mu) * np.eye(4) / 4 + mu * _pure(SINGLET), 2, 2)


def bell(index: int = 0) -> DensityMatrix:
    if index not in _BELL:
        raise ValueError(f"bell index must be one of {sorted(_BELL)}")
    return DensityMatrix(_pure(_BELL[index]), 2, 2)


def product(rho_a, rho_b) -> DensityMatrix:
    a, b = as_matrix(rho_a), as_matrix(rho_b)
    return DensityMatrix(np.kron(a, b), a.shape[0], b.shape[0])


def _xlogx(v: float) -> float:
    return v * math.log(v) if v > 0 else 0.0


def werner_wqd_closed_form(mu: float, eps: float) -> float:
    """Weak discord of the Werner-singlet family, evaluated in closed form.

    (1/4) sum_{i=-1..1} sum_{j=0,1} (-1)^j l_ij ln l_ij with
    l_ij = 1 + mu [1 + 2 i (1 - j eps)].
    """
    if not (0.0 <= mu <= 1.0 and 0.0 <= eps <= 1.0):
        raise ValueError("mu and eps must lie in [0, 1]")
    total = 0.0
    for i in (-1, 0, 1):
        for j in (0, 1):
            lam = 1 + mu * (1 + 2 * i * (1 - j * eps))
            total += (-1) ** j * _xlogx(lam)
    return total / 4


def quantum_classical(weights: Sequence[float], a_states: Sequence, pvm: PVM) -> DensityMatrix:
    """sum_b p_b rho_{A|b} (x) B_b."""
    w = np.asarray(weights, dtype=float)
    if len(w) != len(a_states) or len(w) != len(pvm):
        raise DimensionError("weights, A-states and PVM outcomes must have equal length")
    if np.any(w < 0) or abs(w.sum() - 1) > 1e-12:
        raise ValidationError("weights must form a probability vector")
    for p in pvm:
        if abs(np.trace(p).real - 1) > 1e-10:
            raise ValidationError("quantum-classical states need a rank-1 PVM")
    a_mats = [s.matrix if isinstance(s, DensityMatrix) else as_matrix(s) for s in a_states]
    m = sum(wb * np.kron(ra, bb) for wb, ra, bb in zip(w, a_mats, pvm))
    return DensityMatrix(m, a_mats[0].shape[0], pvm.dim)


def classical_classical(weights, pvm_a: PVM, pvm_b: PVM) -> DensityMatrix:
    """sum_{a,b} p_{a,b} A_a (x) B_b; ``weights`` is a table indexed [a, b]."""
    w = np.asarray(weights, dtype=float).reshape(len(pvm_a), len(pvm_b))
    if np.any(w < 0) or abs(w.sum() - 1) > 1e-12:
        raise ValidationError("weights must form a probability table")
    m = sum(w[i, j] * np.kron(pa, pb) for i, pa in enumerate(pvm_a) for j, pb in enumerate(pvm_b))
    return DensityMatrix(m, pvm_a.dim, pvm_b.dim)


def random_density(dim_a: int, dim_b: int, rank: int | None = None, seed: int = 0) -> DensityMatrix:
    """Ginibre-type random state G G^dagger / Tr(G G^dagger).

    G has i.i.d. standard complex normal entries drawn from
    ``numpy.random.default_rng(seed)`` (PCG64), real parts first, then
    imaginary parts.
    """
    n = dim_a * dim_b
    rank = n if rank is None else rank
    if not 1 <= rank <= n:
        raise ValueError(f"rank must lie in [1, {n}], got {rank}")
    rng = np.random.default_rng(seed)
    re = rng.standard_normal((n, rank))
    im = rng.standard_normal((n, rank))
    g = (re + 1j * im) / math.sqrt(2)
    m = g @ g.conj().T
    m = 0.5 * (m + m.conj().T)
    return DensityMatrix(m / np.trace(m).real, dim_a, dim_b)


# ---------------------------------------------------------------- spec parsing


@dataclass(frozen=True)
class StateSpec:
    kind: str
    params: dict = field(default_factory=dict)

    def build(self) -> DensityMatrix:
        return _BUILDERS[self.kind](self.params)


def _floats(s: str) -> list[float]:
    return [float(v) for v in s.split("/")]


def _build_werner(p):
    return werner_singlet(float(p.get("mu", 1.0)))


def _build_bell(p):
    return bell(int(p.get("index", 0)))


def _local(name: str) -> np.ndarray:
    if name not in _QUBIT_STATES:
        raise StateSpecError(f"unknown local state {name!r}; choose from {sorted(_QUBIT_STATES)}")
    return _QUBIT_STATES[name]


def _build_product(p):
    return product(_local(p.get("a", "mixed")), _local(p.get("b", "mixed")))


def _build_qc(p):
    w = _floats(p.get("weights", "0.5/0.5"))
    names = p.get("a", "0/+").split("/")
    return quantum_classical(w, [_local(n) for n in names], PVM.computational(2))


def _build_cc(p):
    w = _floats(p.get("weights", "0.5/0/0/0.5"))
    return classical_classical(w, PVM.computational(2), PVM.computational(2))


def _build_random(p):
    da, db = int(p.get("dA", 2)), int(p.get("dB", 2))
    rank = int(p["rank"]) if "rank" in p else None
    return random_density(da, db, rank, int(p.get("seed", 0)))


_BUILDERS = {
    "werner": _build_werner,
    "bell": _build_bell,
    "product": _build_product,
    "qc": _build_qc,
    "quantum_classical": _build_qc,
    "cc": _build_cc,
    "classical_classical": _build_cc,
    "random": _build_random,
}


def parse_state_spec(text: str) -> StateSpec:
    kind, _, rest = text.strip().partition(":")
    if kind not in _BUILDERS:
        raise StateSpecError(f"unknown state kind {kind!r}; choose from {sorted(_BUILDERS)}")
    params = {}
    for item in filter(None, rest.split(",")):
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise StateSpecError(f"malformed parameter {item!r} in {text!r}")
        params[key.strip()] = value.strip()
    return StateSpec(kind, params)


def state_from_spec(text: str) -> DensityMatrix:
    spec = parse_state_spec(text)
    try:
        return spec.build()
    except (KeyError, ValueError) as exc:
        if isinstance(exc, (ValidationError, DimensionError)):
            raise
        raise StateSpecError(f"bad parameters in {text!r}: {exc}") from exc
