"""Seeded property suites: map identities, the weak-discord bound, hierarchy, etc.

Each suite returns one :class:`PropertyResult` per property. A property's
``max_violation`` is the largest amount by which any sample broke the
inequality or identity (0 when every sample satisfied it outright), and
``worst`` describes that sample so it can be reproduced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .info import (
    classical_mutual_info_I,
    classical_mutual_info_J,
    quantum_mutual_info,
    von_neumann_entropy,
)
from .linalg import PVM, DensityMatrix, partial_trace
from .maps import (
    BlochAngles,
    dichotomic_channel,
    dichotomic_strength,
    monitoring,
    monitoring_power,
    pvm_from_bloch,
    stinespring_dilation,
    trace_out_ancilla,
    unrevealed_projective,
)
from .optimize import OptimizerConfig
from .quantifiers import (
    DEFAULT_CONFIG,
    classical_correlations,
    conditional_entropy_term,
    discord,
    discord_fixed,
    discord_fixed_gap,
    interpretation_decomposition,
    super_discord,
    sym_discord,
    sym_weak_discord,
    weak_collapse_discord,
    weak_discord,
    weak_discord_fixed,
)
from .states import random_density, werner_singlet

SUITES = ("maps", "theorem1", "hierarchy", "sqd", "classical")
DICHOTOMIC_XS = (-2.0, -0.5, 0.0, 0.5, 2.0)


@dataclass
class PropertyResult:
    name: str
    tolerance: float
    samples: int = 0
    max_violation: float = 0.0
    worst: str = ""

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tolerance

    def record(self, violation: float, context: str) -> None:
        self.samples += 1
        violation = max(float(violation), 0.0)
        if violation > self.max_violation or not self.worst:
            self.max_violation = max(violation, self.max_violation)
            self.worst = context

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = (
            f"{status}  {self.name:<44} n={self.samples:<5} "
            f"max_violation={self.max_violation:.3e} tol={self.tolerance:.0e}"
        )
        if not self.passed:
            text += f"  worst: {self.worst}"
        return text


def _maxabs(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def _random_angles(rng) -> BlochAngles:
    return BlochAngles(math.acos(rng.uniform(-1, 1)), rng.uniform(0, 2 * math.pi))


def random_pvm(dim: int, rng, n_outcomes: int | None = None) -> PVM:
    """Random PVM from a QR-unitary, columns split into ``n_outcomes`` consecutive blocks."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    if n_outcomes is None:
        n_outcomes = int(rng.integers(2, dim + 1))
    cuts = np.sort(rng.choice(np.arange(1, dim), size=n_outcomes - 1, replace=False))
    blocks = np.split(np.arange(dim), cuts)
    return PVM(tuple(q[:, b] @ q[:, b].conj().T for b in blocks))


def _sample_state(rng, dims=(2, 2)) -> tuple[DensityMatrix, str]:
    seed = int(rng.integers(0, 2**63 - 1))
    n = dims[0] * dims[1]
    rank = int(rng.integers(1, n + 1))
    ctx = f"random:dA={dims[0]},dB={dims[1]},rank={rank},seed={seed}"
    return random_density(dims[0], dims[1], rank, seed), ctx


def _two_qubit_states(samples: int, seed: int):
    rng = np.random.default_rng(seed)
    return [_sample_state(rng) for _ in range(samples)]


def suite_maps(samples: int, seed: int) -> list[PropertyResult]:
    props = {
        "non_signaling": PropertyResult("non-signaling of monitoring", 1e-10),
        "absorption": PropertyResult("absorption Phi o M^eps = Phi", 1e-10),
        "composition": PropertyResult("[M^eps]^n closed form vs composition", 1e-10),
        "dichotomic": PropertyResult("dichotomic channel = M^(1-sech x)", 1e-10),
        "dilation": PropertyResult("Stinespring dilation reproduces M^eps", 1e-10),
        "joint_entropy": PropertyResult("joint-entropy theorem identity", 1e-9),
        "monotone_I": PropertyResult("I(M^eps(rho)) <= I(rho)", 1e-9),
        "two_forms": PropertyResult("conditional vs distance form of discord", 1e-9),
    }
    rng = np.random.default_rng(seed)
    dim_choices = [(2, 2), (2, 2), (2, 3), (3, 2)]
    for _ in range(samples):
        dims = dim_choices[int(rng.integers(len(dim_choices)))]
        rho, ctx = _sample_state(rng, dims)
        side = "B" if rng.uniform() < 0.75 else "A"
        d = dims[1] if side == "B" else dims[0]
        pvm = random_pvm(d, rng)
        eps = float(rng.uniform())
        ctx = f"{ctx} side={side} eps={eps:.17g}"
        other = "A" if side == "B" else "B"

        mon = monitoring(rho, pvm, eps, side)
        props["non_signaling"].record(
            _maxabs(partial_trace(mon, side), partial_trace(rho, side)), ctx
        )
        phi = unrevealed_projective(rho, pvm, side)
        props["absorption"].record(_maxabs(unrevealed_projective(mon, pvm, side).matrix, phi.matrix), ctx)

        state = rho
        worst = 0.0
        for n in range(1, 11):
            state = monitoring(state, pvm, eps, side)
            worst = max(worst, _maxabs(state.matrix, monitoring_power(rho, pvm, eps, n, side).matrix))
        props["composition"].record(worst, ctx)

        pvm2 = random_pvm(d, rng, n_outcomes=2)
        worst = 0.0
        for x in DICHOTOMIC_XS:
            lhs = dichotomic_channel(rho, x, pvm2, side)
            rhs = monitoring(rho, pvm2, dichotomic_strength(x), side)
            worst = max(worst, _maxabs(lhs.matrix, rhs.matrix))
        props["dichotomic"].record(worst, ctx)

        v = stinespring_dilation(pvm, eps, dims, side)
        worst = _maxabs(v.conj().T @ v, np.eye(rho.dim))
        worst = max(worst, _maxabs(trace_out_ancilla(v, rho).matrix, mon.matrix))
        props["dilation"].record(worst, ctx)

        props["monotone_I"].record(quantum_mutual_info(mon) - quantum_mutual_info(rho), ctx)

        # the joint-entropy identity and the two discord forms need rank-1 projectors
        if all(abs(np.trace(p).real - 1) < 1e-9 for p in pvm):
            local = partial_trace(rho, other)
            local_phi = sum(p @ local @ p for p in pvm)
            lhs = von_neumann_entropy(phi)
            rhs = von_neumann_entropy(local_phi) + conditional_entropy_term(rho, pvm, side)
            props["joint_entropy"].record(abs(lhs - rhs), ctx)
            props["two_forms"].record(
                abs(discord_fixed(rho, pvm, side) - discord_fixed_gap(rho, pvm, side)), ctx
            )
    return list(props.values())


def suite_theorem1(samples: int, seed: int, config: OptimizerConfig = DEFAULT_CONFIG,
                   epsilons=(0.25, 0.5, 0.75)) -> list[PropertyResult]:
    upper = PropertyResult("weak discord <= discord", 1e-7)
    lower = PropertyResult("weak discord >= 0", 1e-9)
    monotone = PropertyResult("fixed-B weak discord non-decreasing in eps", 1e-9)
    fixed = PropertyResult("zero discord on Phi_B(rho) states", 1e-7)
    interp = PropertyResult("interpretation difference = weak discord", 1e-7)
    rng = np.random.default_rng(seed + 1)
    for rho, ctx in _two_qubit_states(samples, seed):
        d = discord(rho, config).value
        for eps in epsilons:
            w = weak_discord(rho, eps, config).value
            upper.record(w - d, f"{ctx} eps={eps}")
            lower.record(-w, f"{ctx} eps={eps}")

        pvm = pvm_from_bloch(_random_angles(rng))
        grid = np.linspace(0, 1, 11)
        vals = [weak_discord_fixed(rho, pvm, e) for e in grid]
        monotone.record(max(a - b for a, b in zip(vals, vals[1:])), ctx)

        qc = unrevealed_projective(rho, pvm)
        eps = float(rng.uniform())
        fixed.record(max(discord(qc, config).value, weak_discord(qc, eps, config).value), f"Phi_B({ctx}) eps={eps}")

        eps = epsilons[int(rng.integers(len(epsilons)))]
        dec = interpretation_decomposition(rho, eps, config)
        w = weak_discord(rho, eps, config).value
        interp.record(abs(dec.wqd_check - w), f"{ctx} eps={eps}")
    return [upper, lower, monotone, fixed, interp]


def suite_hierarchy(samples: int, seed: int, config: OptimizerConfig = DEFAULT_CONFIG,
                    eps_a: float = 0.5, eps_b: float = 0.5) -> list[PropertyResult]:
    sym_ge = PropertyResult("sym discord >= discord", 1e-7)
    sw_le = PropertyResult("sym weak discord <= sym discord", 1e-7)
    sw_ge = PropertyResult("sym weak discord >= weak discord", 1e-7)
    for rho, ctx in _two_qubit_states(samples, seed):
        sd = sym_discord(rho, config).value
        sw = sym_weak_discord(rho, eps_a, eps_b, config).value
        sym_ge.record(discord(rho, config).value - sd, ctx)
        sw_le.record(sw - sd, ctx)
        sw_ge.record(weak_discord(rho, eps_b, config).value - sw, ctx)
    return [sym_ge, sw_le, sw_ge]


def suite_sqd(samples: int, seed: int, config: OptimizerConfig = DEFAULT_CONFIG,
              xs=(0.5, 1.0, 2.0)) -> list[PropertyResult]:
    zero = PropertyResult("super discord at x=0 equals I(rho)", 1e-8)
    dom = PropertyResult("super discord >= discord", 1e-7)
    bound = PropertyResult("weak-collapse discord >= eps D + (1-eps) S_B", 1e-7)
    limit = PropertyResult("weak-collapse discord (eps=1e-3) > S(rho_B)", 1e-6)
    rng = np.random.default_rng(seed + 1)
    for rho, ctx in _two_qubit_states(samples, seed):
        zero.record(abs(super_discord(rho, 0.0, config).value - quantum_mutual_info(rho)), ctx)
        d = discord(rho, config).value
        for x in xs:
            dom.record(d - super_discord(rho, x, config).value, f"{ctx} x={x}")
        eps = float(rng.uniform(0.05, 1.0))
        s_b = von_neumann_entropy(partial_trace(rho, "A"))
        frak = weak_collapse_discord(rho, eps, config).value
        bound.record(eps * d + (1 - eps) * s_b - frak, f"{ctx} eps={eps:.17g}")
    for mu in (0.25, 0.5, 0.75):
        rho = werner_singlet(mu)
        frak = weak_collapse_discord(rho, 1e-3, config).value
        limit.record(von_neumann_entropy(partial_trace(rho, "A")) - frak, f"werner:mu={mu}")
    return [zero, dom, bound, limit]


def random_joint(rng, max_dim: int = 5) -> np.ndarray:
    nx, ny = rng.integers(1, max_dim + 1, size=2)
    p = rng.exponential(size=(nx, ny))
    p[rng.uniform(size=p.shape) < 0.2] = 0.0
    if p.sum() == 0:
        p[0, 0] = 1.0
    return p / p.sum()


def suite_classical(samples: int, seed: int, config: OptimizerConfig = DEFAULT_CONFIG,
                    quantum_samples: int | None = None) -> list[PropertyResult]:
    ij = PropertyResult("classical I = J", 1e-12)
    decomp = PropertyResult("I(rho) = discord + classical correlations", 1e-7)
    rng = np.random.default_rng(seed)
    for i in range(samples):
        p = random_joint(rng)
        ij.record(abs(classical_mutual_info_I(p) - classical_mutual_info_J(p)), f"joint #{i} seed={seed}")
    n_quantum = min(samples, 20) if quantum_samples is None else quantum_samples
    for rho, ctx in _two_qubit_states(n_quantum, seed):
        total = discord(rho, config).value + classical_correlations(rho, config).value
        decomp.record(abs(quantum_mutual_info(rho) - total), ctx)
    return [ij, decomp]


def run_suite(name: str, samples: int, seed: int, config: OptimizerConfig = DEFAULT_CONFIG) -> list[PropertyResult]:
    runners = {
        "maps": suite_maps,
        "theorem1": suite_theorem1,
        "hierarchy": suite_hierarchy,
        "sqd": suite_sqd,
        "classical": suite_classical,
    }
    if name == "all":
        return [r for s in SUITES for r in run_suite(s, samples, seed, config)]
    if name == "maps":
        return suite_maps(samples, seed)
    return runners[name](samples, seed, config)
