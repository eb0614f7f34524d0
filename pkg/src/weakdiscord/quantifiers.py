"""Discord-like correlation quantifiers.

Fixed-measurement versions accept any PVM dimension. Minimized versions
search rank-1 qubit PVMs parameterized by Bloch angles, so the measured
side (both sides for the symmetric variants) must be a qubit.

The optimizer hot path works on raw stacked arrays (see the ``_*_stack``
helpers) instead of validated :class:`DensityMatrix` objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .info import entropy_stack, mutual_info_stack, quantum_mutual_info, von_neumann_entropy
from .linalg import PVM, DensityMatrix, DimensionError, partial_trace
from .maps import (
    PROB_FLOOR,
    BlochAngles,
    ZeroProbabilityError,
    bloch_projectors,
    check_strength,
    collapse,
    monitoring,
    monitoring_stack,
    pvm_from_bloch,
    unrevealed_projective,
)
from .optimize import Diagnostics, OptimizerConfig, minimize_bloch, minimize_bloch_pair

DEFAULT_CONFIG = OptimizerConfig()


class UnsupportedDimensionError(DimensionError):
    """Minimization was requested on a subsystem that is not a qubit."""


@dataclass(frozen=True)
class QuantifierResult:
    """Optimized value plus the measurement that attains it.

    ``diagnostics`` refer to the objective that was actually minimized
    (for classical correlations that is the negated J).
    """

    value: float
    measurement: BlochAngles
    diagnostics: Diagnostics
    measurement_a: Optional[BlochAngles] = None


def _require_qubit(rho: DensityMatrix, *sides: str) -> None:
    for side in sides:
        d = rho.dim_a if side == "A" else rho.dim_b
        if d != 2:
            raise UnsupportedDimensionError(
                f"minimization over side {side} needs a qubit, got dimension {d}"
            )


# ---------------------------------------------------------------- fixed PVM


def conditional_entropy_term(rho: DensityMatrix, pvm: PVM, side: str = "B") -> float:
    """sum_b p_b S(rho_{other|b}) over outcomes with p_b > 1e-14."""
    total = 0.0
    for b in range(len(pvm)):
        try:
            post, p = collapse(rho, pvm, b, side)
        except ZeroProbabilityError:
            continue
        total += p * von_neumann_entropy(partial_trace(post, side))
    return total


def discord_fixed(rho: DensityMatrix, pvm: PVM, side: str = "B") -> float:
    """Conditional-entropy form of discord at a fixed measurement."""
    measured = partial_trace(rho, "A" if side == "B" else "B")
    return conditional_entropy_term(rho, pvm, side) + von_neumann_entropy(measured) - von_neumann_entropy(rho)


def discord_fixed_gap(rho: DensityMatrix, pvm: PVM, side: str = "B") -> float:
    """Distance form of discord at a fixed measurement: I(rho) - I(Phi(rho))."""
    return quantum_mutual_info(rho) - quantum_mutual_info(unrevealed_projective(rho, pvm, side))


def weak_discord_fixed(rho: DensityMatrix, pvm: PVM, eps: float, side: str = "B") -> float:
    return quantum_mutual_info(rho) - quantum_mutual_info(monitoring(rho, pvm, eps, side))


# ------------------------------------------------------------ stacked paths


def _cond_entropy_effects(m: np.ndarray, effects: np.ndarray, dim_a: int, dim_b: int) -> np.ndarray:
    """sum_k p_k S(rho_{A|k}) for B-side effects of shape (N, K, 2, 2).

    Uses p S(sigma/p) = S_unnorm(sigma) + p ln p so no division is needed.
    """
    t = m.reshape(dim_a, dim_b, dim_a, dim_b)
    sigma = np.einsum("nkbc,acxb->nkax", effects, t)
    p = np.einsum("nkaa->nk", sigma).real
    with np.errstate(divide="ignore", invalid="ignore"):
        plogp = np.where(p > PROB_FLOOR, p * np.log(np.where(p > PROB_FLOOR, p, 1.0)), 0.0)
    s = np.where(p > PROB_FLOOR, entropy_stack(sigma), 0.0)
    return (s + plogp).sum(axis=-1)


def _marginal_entropies(rho: DensityMatrix) -> tuple[float, float, float]:
    return (
        von_neumann_entropy(partial_trace(rho, "B")),
        von_neumann_entropy(partial_trace(rho, "A")),
        von_neumann_entropy(rho),
    )


def _one_or_many(fn):
    """Adapt a stacked objective to a BlochAngles -> float callable."""
    return lambda a: float(fn(np.array([a.theta]), np.array([a.phi]))[0])


def _pair_one(fn):
    def f(a: BlochAngles, b: BlochAngles) -> float:
        arr = lambda v: np.array([v])  # noqa: E731
        return float(fn(arr(a.theta), arr(a.phi), arr(b.theta), arr(b.phi))[0])

    return f


def _minimize(fn, config: OptimizerConfig) -> QuantifierResult:
    angles, value, diag = minimize_bloch(_one_or_many(fn), config, batch=fn)
    return QuantifierResult(value, angles, diag)


# --------------------------------------------------------------- minimized


def discord(rho: DensityMatrix, config: OptimizerConfig = DEFAULT_CONFIG) -> QuantifierResult:
    """Quantum discord with a B-side projective measurement."""
    _require_qubit(rho, "B")
    _, s_b, s_ab = _marginal_entropies(rho)
    m, da, db = rho.matrix, rho.dim_a, rho.dim_b

    def fn(th, ph):
        return _cond_entropy_effects(m, bloch_projectors(th, ph), da, db) + s_b - s_ab

    return _minimize(fn, config)


def classical_correlations(rho: DensityMatrix, config: OptimizerConfig = DEFAULT_CONFIG) -> QuantifierResult:
    """max_B [S(rho_A) - sum_b p_b S(rho_{A|b})]."""
    _require_qubit(rho, "B")
    s_a, _, _ = _marginal_entropies(rho)
    m, da, db = rho.matrix, rho.dim_a, rho.dim_b

    def fn(th, ph):
        return _cond_entropy_effects(m, bloch_projectors(th, ph), da, db) - s_a

    res = _minimize(fn, config)
    return QuantifierResult(-res.value, res.measurement, res.diagnostics)


def _dichotomic_effects(projs: np.ndarray, x: float) -> np.ndarray:
    """Squares P_+^2, P_-^2 of the dichotomic operators for each PVM in ``projs``."""
    t = np.tanh(x)
    p0, p1 = projs[:, 0], projs[:, 1]
    plus = (1 - t) / 2 * p0 + (1 + t) / 2 * p1
    minus = (1 + t) / 2 * p0 + (1 - t) / 2 * p1
    return np.stack([plus, minus], axis=1)


def super_discord(rho: DensityMatrix, x: float, config: OptimizerConfig = DEFAULT_CONFIG) -> QuantifierResult:
    """Discord with the conditional entropy taken over dichotomic weak measurements of strength ``x``."""
    _require_qubit(rho, "B")
    if not np.isfinite(x):
        raise ValueError("x must be finite")
    _, s_b, s_ab = _marginal_entropies(rho)
    m, da, db = rho.matrix, rho.dim_a, rho.dim_b

    def fn(th, ph):
        eff = _dichotomic_effects(bloch_projectors(th, ph), x)
        return _cond_entropy_effects(m, eff, da, db) + s_b - s_ab

    return _minimize(fn, config)


def weak_collapse_discord(rho: DensityMatrix, eps: float, config: OptimizerConfig = DEFAULT_CONFIG) -> QuantifierResult:
    """Conditional-entropy discord built on weak collapses (1-eps) rho + eps C_b(rho).

    This is the construction that does not vanish as eps -> 0; it is kept
    to exhibit that defect.
    """
    _require_qubit(rho, "B")
    eps = check_strength(eps)
    if eps == 0:
        raise ValueError("weak-collapse discord needs eps in (0, 1]")
    _, s_b, s_ab = _marginal_entropies(rho)
    m, da, db = rho.matrix, rho.dim_a, rho.dim_b
    n = da * db

    def fn(th, ph):
        projs = bloch_projectors(th, ph)
        t = m.reshape(da, db, da, db)
        unnorm = np.einsum("nkbc,acxy,nkyz->nkabxz", projs, t, projs).reshape(len(th), 2, n, n)
        p = np.einsum("nkii->nk", unnorm).real
        ok = p > PROB_FLOOR
        safe = np.where(ok, p, 1.0)[..., None, None]
        post = (1 - eps) * m + eps * unnorm / safe
        s = np.where(ok, entropy_stack(post), 0.0)
        return (p * s).sum(axis=-1) + s_b - s_ab

    return _minimize(fn, config)


def weak_discord(rho: DensityMatrix, eps: float, config: OptimizerConfig = DEFAULT_CONFIG) -> QuantifierResult:
    """min_B [I(rho) - I(M_B^eps(rho))]."""
    _require_qubit(rho, "B")
    eps = check_strength(eps)
    i_rho = quantum_mutual_info(rho)
    s_a = von_neumann_entropy(partial_trace(rho, "B"))
    m, da, db = rho.matrix, rho.dim_a, rho.dim_b

    def fn(th, ph):
        out = monitoring_stack(m, bloch_projectors(th, ph), eps, "B", da, db)
        # B-side monitoring never changes the A marginal
        return i_rho - mutual_info_stack(out, da, db, s_a=s_a)

    return _minimize(fn, config)


def _sym(rho: DensityMatrix, eps_a: float, eps_b: float, config: OptimizerConfig) -> QuantifierResult:
    _require_qubit(rho, "A", "B")
    i_rho = quantum_mutual_info(rho)
    m = rho.matrix

    def fn(ta, pa, tb, pb):
        out = monitoring_stack(m, bloch_projectors(tb, pb), eps_b, "B", 2, 2)
        out = monitoring_stack(out, bloch_projectors(ta, pa), eps_a, "A", 2, 2)
        return i_rho - mutual_info_stack(out, 2, 2)

    (a, b), value, diag = minimize_bloch_pair(_pair_one(fn), config, batch=fn)
    return QuantifierResult(value, b, diag, measurement_a=a)


def sym_discord(rho: DensityMatrix, config: OptimizerConfig = DEFAULT_CONFIG) -> QuantifierResult:
    """min_{A,B} [I(rho) - I(Phi_A Phi_B(rho))]."""
    return _sym(rho, 1.0, 1.0, config)


def sym_weak_discord(
    rho: DensityMatrix, eps_a: float, eps_b: float, config: OptimizerConfig = DEFAULT_CONFIG
) -> QuantifierResult:
    """min_{A,B} [I(rho) - I(M_A^eps_a M_B^eps_b(rho))]."""
    return _sym(rho, check_strength(eps_a), check_strength(eps_b), config)


@dataclass(frozen=True)
class Decomposition:
    destroyed_total: float
    surviving: float
    wqd_check: float
    measurement: BlochAngles


def interpretation_decomposition(
    rho: DensityMatrix, eps: float, config: OptimizerConfig = DEFAULT_CONFIG
) -> Decomposition:
    """Split weak discord into correlations present before and after monitoring.

    With B the optimal weak-discord measurement and rho~ = M_B^eps(rho),
    returns I(rho) - I(Phi_B rho), I(rho~) - I(Phi_B rho~) and their
    difference, which reproduces the weak discord.
    """
    best = weak_discord(rho, eps, config).measurement
    pvm = pvm_from_bloch(best)
    monitored = monitoring(rho, pvm, eps)
    destroyed = discord_fixed_gap(rho, pvm)
    surviving = discord_fixed_gap(monitored, pvm)
    return Decomposition(destroyed, surviving, destroyed - surviving, best)
