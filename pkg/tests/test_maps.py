import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import maxabs
from weakdiscord.info import quantum_mutual_info
from weakdiscord.linalg import PVM, ValidationError, partial_trace
from weakdiscord.maps import (
    BlochAngles,
    ZeroProbabilityError,
    collapse,
    dichotomic_channel,
    dichotomic_operators,
    dichotomic_strength,
    monitoring,
    monitoring_power,
    pvm_from_bloch,
    stinespring_dilation,
    trace_out_ancilla,
    unrevealed_projective,
    weak_collapse,
)
from weakdiscord.states import product, quantum_classical, random_density
from weakdiscord.verify import random_pvm

Z = PVM.computational(2)
KET0 = np.diag([1.0, 0.0])
KET1 = np.diag([0.0, 1.0])

seeds = st.integers(0, 2**32)
strengths = st.floats(0.0, 1.0)


def _two_qubit(seed):
    return random_density(2, 2, 1 + seed % 4, seed)


# ------------------------------------------------------------ Bloch PVMs


def test_pvm_from_bloch_poles_and_equator():
    p = pvm_from_bloch(BlochAngles(0, 0)).projectors
    np.testing.assert_allclose(p[0], KET0, atol=1e-15)
    np.testing.assert_allclose(p[1], KET1, atol=1e-15)
    p = pvm_from_bloch(BlochAngles(math.pi, 0)).projectors
    np.testing.assert_allclose(p[0], KET1, atol=1e-15)
    np.testing.assert_allclose(p[1], KET0, atol=1e-15)
    p = pvm_from_bloch(BlochAngles(math.pi / 2, 0)).projectors
    np.testing.assert_allclose(p[0], np.full((2, 2), 0.5), atol=1e-15)
    np.testing.assert_allclose(p[1], [[0.5, -0.5], [-0.5, 0.5]], atol=1e-15)


def test_bloch_angle_ranges():
    with pytest.raises(ValueError):
        BlochAngles(-0.1, 0)
    with pytest.raises(ValueError):
        BlochAngles(0, 2 * math.pi)
    a = BlochAngles.wrapped(4.0, -1.0)
    assert a.theta == math.pi and a.phi == pytest.approx(2 * math.pi - 1.0)


# ------------------------------------------------------------ collapse


def test_collapse_on_singlet(singlet):
    post, p = collapse(singlet, Z, 0)
    assert p == pytest.approx(0.5, abs=1e-15)
    np.testing.assert_allclose(partial_trace(post, "B"), KET1, atol=1e-15)
    np.testing.assert_allclose(partial_trace(post, "A"), KET0, atol=1e-15)


def test_collapse_on_eigenstate_is_identity():
    rho = product(np.diag([0.3, 0.7]), KET0)
    post, p = collapse(rho, Z, 0)
    assert p == pytest.approx(1.0)
    np.testing.assert_allclose(post.matrix, rho.matrix, atol=1e-15)
    with pytest.raises(ZeroProbabilityError):
        collapse(rho, Z, 1)


def test_collapse_probabilities_sum_to_one():
    rng = np.random.default_rng(3)
    for seed in range(20):
        rho = _two_qubit(seed)
        pvm = random_pvm(2, rng)
        total = sum(collapse(rho, pvm, b)[1] for b in range(2))
        assert abs(total - 1) <= 1e-12


def test_collapse_side_a():
    rho = product(KET1, np.eye(2) / 2)
    post, p = collapse(rho, Z, 1, side="A")
    assert p == pytest.approx(1.0)
    with pytest.raises(ZeroProbabilityError):
        collapse(rho, Z, 0, side="A")


# ------------------------------------------------------------ weak collapse


def test_weak_collapse_limits():
    rho = _two_qubit(5)
    np.testing.assert_allclose(weak_collapse(rho, Z, 0, 0.0).matrix, rho.matrix, atol=1e-15)
    np.testing.assert_allclose(weak_collapse(rho, Z, 0, 1.0).matrix, collapse(rho, Z, 0)[0].matrix, atol=1e-15)


def test_iterated_weak_collapse_converges_to_collapse():
    rho = _two_qubit(8)
    target = collapse(rho, Z, 1)[0].matrix
    state, dists = rho, []
    for _ in range(20):
        state = weak_collapse(state, Z, 1, 0.3)
        dists.append(maxabs(state.matrix, target))
    assert all(b < a for a, b in zip(dists, dists[1:]))
    assert dists[-1] < 1e-2


# ------------------------------------------------------------ Phi and monitoring


def test_unrevealed_projective_examples(singlet):
    np.testing.assert_allclose(
        unrevealed_projective(singlet, Z).matrix, np.diag([0, 0.5, 0.5, 0]), atol=1e-15
    )
    qc = quantum_classical([0.4, 0.6], [np.full((2, 2), 0.5), np.diag([0.2, 0.8])], Z)
    np.testing.assert_allclose(unrevealed_projective(qc, Z).matrix, qc.matrix, atol=1e-15)


def test_unrevealed_projective_is_idempotent_and_trace_preserving():
    rng = np.random.default_rng(0)
    for seed in range(20):
        rho = random_density(2, 3, seed=seed)
        pvm = random_pvm(3, rng)
        once = unrevealed_projective(rho, pvm)
        twice = unrevealed_projective(once, pvm)
        assert maxabs(once.matrix, twice.matrix) <= 1e-12
        assert abs(np.trace(once.matrix) - 1) <= 1e-12


def test_monitoring_limits_and_werner_spectrum(werner_half):
    rho = _two_qubit(2)
    pvm = pvm_from_bloch(BlochAngles(1.1, 2.3))
    np.testing.assert_allclose(monitoring(rho, pvm, 0).matrix, rho.matrix, atol=1e-15)
    np.testing.assert_allclose(monitoring(rho, pvm, 1).matrix, unrevealed_projective(rho, pvm).matrix, atol=1e-15)
    for angles in [BlochAngles(0, 0), BlochAngles(1.1, 2.3), BlochAngles(math.pi / 2, 5.0)]:
        out = monitoring(werner_half, pvm_from_bloch(angles), 0.5)
        np.testing.assert_allclose(np.linalg.eigvalsh(out.matrix), [0.125, 0.125, 0.25, 0.5], atol=1e-12)


def test_monitoring_power():
    rho = _two_qubit(6)
    pvm = pvm_from_bloch(BlochAngles(0.4, 1.0))
    assert monitoring_power(rho, pvm, 0.3, 0) is rho
    np.testing.assert_allclose(monitoring_power(rho, pvm, 0.3, 1).matrix, monitoring(rho, pvm, 0.3).matrix, atol=1e-15)
    phi = unrevealed_projective(rho, pvm).matrix
    assert maxabs(monitoring_power(rho, pvm, 0.5, 50).matrix, phi) <= 1e-10
    composed = monitoring(monitoring(monitoring(rho, pvm, 0.3), pvm, 0.3), pvm, 0.3)
    assert maxabs(monitoring_power(rho, pvm, 0.3, 3).matrix, composed.matrix) <= 1e-12


@settings(max_examples=40)
@given(seed=seeds, eps=strengths, side=st.sampled_from("AB"))
def test_monitoring_properties(seed, eps, side):
    rng = np.random.default_rng(seed)
    rho = _two_qubit(seed)
    pvm = random_pvm(2, rng)
    mon = monitoring(rho, pvm, eps, side)
    # the unmeasured marginal is untouched
    assert maxabs(partial_trace(mon, side), partial_trace(rho, side)) <= 1e-10
    # Phi absorbs monitoring
    phi = unrevealed_projective(rho, pvm, side)
    assert maxabs(unrevealed_projective(mon, pvm, side).matrix, phi.matrix) <= 1e-10
    state = rho
    for n in range(1, 11):
        state = monitoring(state, pvm, eps, side)
        assert maxabs(state.matrix, monitoring_power(rho, pvm, eps, n, side).matrix) <= 1e-10
    assert quantum_mutual_info(mon) <= quantum_mutual_info(rho) + 1e-9


# ------------------------------------------------------------ dichotomic


def test_dichotomic_operators_examples():
    pvm = pvm_from_bloch(BlochAngles(0.7, 0.2))
    p_plus, p_minus = dichotomic_operators(0.0, pvm)
    np.testing.assert_allclose(p_plus, np.eye(2) / math.sqrt(2), atol=1e-15)
    np.testing.assert_allclose(p_minus, np.eye(2) / math.sqrt(2), atol=1e-15)
    p_plus, p_minus = dichotomic_operators(20.0, pvm)
    assert maxabs(p_plus, pvm.projectors[1]) <= 1e-8
    assert maxabs(p_minus, pvm.projectors[0]) <= 1e-8
    with pytest.raises(ValidationError):
        dichotomic_operators(1.0, PVM.computational(3))


@settings(max_examples=50)
@given(x=st.floats(-30, 30), theta=st.floats(0, math.pi), phi=st.floats(0, 6.28))
def test_dichotomic_completeness(x, theta, phi):
    p_plus, p_minus = dichotomic_operators(x, pvm_from_bloch(BlochAngles(theta, phi)))
    assert maxabs(p_plus @ p_plus + p_minus @ p_minus, np.eye(2)) <= 1e-12


def test_dichotomic_channel_examples():
    rho = _two_qubit(4)
    pvm = pvm_from_bloch(BlochAngles(2.0, 4.0))
    assert maxabs(dichotomic_channel(rho, 0.0, pvm).matrix, rho.matrix) <= 1e-15
    x = math.log(2 + math.sqrt(3))  # cosh x = 2
    assert maxabs(dichotomic_channel(rho, x, pvm).matrix, monitoring(rho, pvm, 0.5).matrix) <= 1e-10
    assert maxabs(dichotomic_channel(rho, 20.0, pvm).matrix, unrevealed_projective(rho, pvm).matrix) <= 1e-8


@pytest.mark.parametrize("x", [-2.0, -0.5, 0.0, 0.5, 2.0])
def test_dichotomic_channel_equals_monitoring(x):
    rng = np.random.default_rng(int(abs(x) * 10))
    for seed in range(10):
        rho = _two_qubit(seed)
        pvm = random_pvm(2, rng)
        lhs = dichotomic_channel(rho, x, pvm).matrix
        rhs = monitoring(rho, pvm, dichotomic_strength(x)).matrix
        assert maxabs(lhs, rhs) <= 1e-10


# ------------------------------------------------------------ dilation


def test_dilation_limits():
    rho = _two_qubit(12)
    pvm = pvm_from_bloch(BlochAngles(0.3, 0.9))
    v0 = stinespring_dilation(pvm, 0.0, (2, 2))
    assert v0.shape == (12, 4)
    # eps = 0: only the ancilla's first basis state is populated
    assert np.all(v0[1::3] == 0) and np.all(v0[2::3] == 0)
    assert maxabs(trace_out_ancilla(v0, rho).matrix, rho.matrix) <= 1e-15
    v1 = stinespring_dilation(pvm, 1.0, (2, 2))
    assert maxabs(trace_out_ancilla(v1, rho).matrix, unrevealed_projective(rho, pvm).matrix) <= 1e-14


def test_dilation_reproduces_monitoring():
    rng = np.random.default_rng(21)
    rho = _two_qubit(3)
    angles = BlochAngles(math.acos(rng.uniform(-1, 1)), rng.uniform(0, 2 * math.pi))
    pvm = pvm_from_bloch(angles)
    v = stinespring_dilation(pvm, 0.3, (2, 2))
    assert maxabs(v.conj().T @ v, np.eye(4)) <= 1e-10
    assert maxabs(trace_out_ancilla(v, rho).matrix, monitoring(rho, pvm, 0.3).matrix) <= 1e-10


def test_dilation_on_side_a_with_qutrit():
    rng = np.random.default_rng(2)
    rho = random_density(3, 2, seed=5)
    pvm = random_pvm(3, rng, n_outcomes=3)
    v = stinespring_dilation(pvm, 0.6, (3, 2), side="A")
    assert v.shape == (6 * 4, 6)
    assert maxabs(trace_out_ancilla(v, rho).matrix, monitoring(rho, pvm, 0.6, "A").matrix) <= 1e-10
