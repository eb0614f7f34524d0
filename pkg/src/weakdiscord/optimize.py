"""Grid scan plus Nelder-Mead refinement over Bloch-sphere measurement angles.

The grid is evaluated in full; the best cell (lexicographically smallest
angles among near-ties) and a few further low cells pointing in clearly
different directions each seed a simplex refinement, and the best answer
is returned. Everything is deterministic for a fixed config.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.optimize import minimize

from .maps import BlochAngles

TIE_TOL = 1e-9
# refined points must beat the grid by more than this to replace it, so
# flat landscapes keep the tie-broken grid angles
ACCEPT_TOL = 1e-13
# grid cells whose directions overlap less than this count as distinct starts
DISTINCT_COS = 0.9


class NonFiniteObjectiveError(ArithmeticError):
    pass


@dataclass(frozen=True)
class OptimizerConfig:
    theta_points: int = 33
    phi_points: int = 64
    refine_max_iter: int = 200
    refine_tol: float = 1e-10
    pair_theta_points: int = 9
    pair_phi_points: int = 16
    # extra Nelder-Mead restarts from the last refined point; cheap insurance
    # against simplex stagnation
    refine_restarts: int = 2
    # number of distinct low grid cells each seeding a refinement
    refine_starts: int = 4

    def __post_init__(self):
        for name in ("theta_points", "phi_points", "pair_theta_points", "pair_phi_points"):
            if getattr(self, name) < 2:
                raise ValueError(f"{name} must be >= 2")
        if self.refine_max_iter < 1 or self.refine_restarts < 0 or self.refine_starts < 1:
            raise ValueError("refine_max_iter, refine_starts must be >= 1; refine_restarts >= 0")
        if not self.refine_tol > 0:
            raise ValueError("refine_tol must be positive")


@dataclass(frozen=True)
class Diagnostics:
    grid_best: float
    refined: float
    iterations: int
    evaluations: int


def angle_grid(theta_points: int, phi_points: int) -> tuple[np.ndarray, np.ndarray]:
    """Flattened (theta, phi) grid in lexicographic order."""
    th = np.linspace(0.0, math.pi, theta_points)
    ph = 2 * math.pi * np.arange(phi_points) / phi_points
    tt, pp = np.meshgrid(th, ph, indexing="ij")
    return tt.ravel(), pp.ravel()


def _tie_break(values: np.ndarray) -> int:
    if not np.all(np.isfinite(values)):
        raise NonFiniteObjectiveError("objective returned a non-finite value on the grid")
    # grid arrays are already lexicographically ordered
    return int(np.flatnonzero(values <= values.min() + TIE_TOL)[0])


def _directions(points: np.ndarray) -> np.ndarray:
    """Bloch unit vectors, shape (N, n_sides, 3), for rows of (theta, phi, ...)."""
    th, ph = points[:, 0::2], points[:, 1::2]
    return np.stack([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)], axis=-1)


def _start_cells(values: np.ndarray, points: np.ndarray, first: int, n_starts: int) -> list[int]:
    """``first`` plus the next-best grid cells that describe genuinely different PVMs.

    Antipodal directions give the same PVM, so similarity uses |n . n'|.
    """
    chosen = [first]
    if n_starts <= 1:
        return chosen
    dirs = _directions(points)
    for i in np.argsort(values, kind="stable"):
        if len(chosen) >= n_starts:
            break
        sim = np.abs(np.einsum("sk,csk->cs", dirs[i], dirs[chosen])).min(axis=1)
        if np.all(sim < DISTINCT_COS):
            chosen.append(int(i))
    return chosen


def _wrap(x: np.ndarray) -> tuple[BlochAngles, ...]:
    return tuple(BlochAngles.wrapped(x[i], x[i + 1]) for i in range(0, len(x), 2))


def _nelder_mead(f: Callable[[np.ndarray], float], x0: np.ndarray, steps: np.ndarray, config: OptimizerConfig):
    def safe(x):
        v = f(x)
        if not math.isfinite(v):
            raise NonFiniteObjectiveError(f"objective returned {v} at {x}")
        return v

    x, fx = x0, safe(x0)
    nit = nfev = 0
    for _ in range(1 + config.refine_restarts):
        simplex = np.vstack([x] + [x + np.eye(len(x))[i] * steps[i] for i in range(len(x))])
        res = minimize(
            safe,
            x,
            method="Nelder-Mead",
            options={
                "initial_simplex": simplex,
                "maxiter": config.refine_max_iter,
                "xatol": config.refine_tol,
                "fatol": config.refine_tol,
            },
        )
        nit += res.nit
        nfev += res.nfev
        improved = fx - res.fun
        if res.fun < fx:
            x, fx = res.x, float(res.fun)
        if improved <= config.refine_tol:
            break
        steps = steps / 4
    return x, fx, nit, nfev


def _grid_then_refine(objective, values: np.ndarray, points: np.ndarray, steps: np.ndarray,
                      config: OptimizerConfig):
    if not np.all(np.isfinite(values)):
        raise NonFiniteObjectiveError("objective returned a non-finite value on the grid")
    first = _tie_break(values)
    grid_best = float(values[first])
    f = lambda x: objective(*_wrap(x))  # noqa: E731
    best_x, best_f = points[first], grid_best
    nit_total, nfev_total = 0, len(values)
    for i in _start_cells(values, points, first, config.refine_starts):
        x, fx, nit, nfev = _nelder_mead(f, points[i], steps, config)
        nit_total += nit
        nfev_total += nfev + 1
        if fx < best_f - ACCEPT_TOL:
            best_x, best_f = x, fx
    return _wrap(best_x), best_f, Diagnostics(grid_best, best_f, nit_total, nfev_total)


def minimize_bloch(
    objective: Callable[[BlochAngles], float],
    config: OptimizerConfig = OptimizerConfig(),
    batch: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]] = None,
) -> tuple[BlochAngles, float, Diagnostics]:
    """Minimize ``objective`` over one set of Bloch angles.

    ``batch``, if given, must evaluate the same objective on arrays of
    angles; it is used for the grid scan only.
    """
    th, ph = angle_grid(config.theta_points, config.phi_points)
    if batch is not None:
        values = np.asarray(batch(th, ph), dtype=float)
    else:
        values = np.array([objective(BlochAngles(t, p)) for t, p in zip(th, ph)])
    steps = np.array([math.pi / (config.theta_points - 1), 2 * math.pi / config.phi_points]) / 2
    (best,), value, diag = _grid_then_refine(objective, values, np.column_stack([th, ph]), steps, config)
    return best, value, diag


def minimize_bloch_pair(
    objective: Callable[[BlochAngles, BlochAngles], float],
    config: OptimizerConfig = OptimizerConfig(),
    batch: Optional[Callable[..., np.ndarray]] = None,
) -> tuple[tuple[BlochAngles, BlochAngles], float, Diagnostics]:
    """Minimize over two independent sets of Bloch angles (side A, side B).

    ``batch(theta_a, phi_a, theta_b, phi_b)`` evaluates the product grid
    in one call when supplied.
    """
    th, ph = angle_grid(config.pair_theta_points, config.pair_phi_points)
    m = len(th)
    ia, ib = np.divmod(np.arange(m * m), m)
    ta, pa, tb, pb = th[ia], ph[ia], th[ib], ph[ib]
    if batch is not None:
        values = np.asarray(batch(ta, pa, tb, pb), dtype=float)
    else:
        values = np.array(
            [objective(BlochAngles(*a), BlochAngles(*b)) for a, b in zip(zip(ta, pa), zip(tb, pb))]
        )
    dt = math.pi / (config.pair_theta_points - 1)
    dp = 2 * math.pi / config.pair_phi_points
    steps = np.array([dt, dp, dt, dp]) / 2
    points = np.column_stack([ta, pa, tb, pb])
    return _grid_then_refine(objective, values, points, steps, config)
