import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weakdiscord.linalg import (
    PVM,
    DensityMatrix,
    DimensionError,
    ValidationError,
    embed,
    hermitian_eigenvalues,
    kron,
    partial_trace,
)
from weakdiscord.states import random_density, werner_singlet

KET0 = np.diag([1.0, 0.0])
KET1 = np.diag([0.0, 1.0])


def test_kron_identity_and_basis():
    np.testing.assert_array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
    np.testing.assert_array_equal(kron(KET0, KET1), np.diag([0, 1, 0, 0]))


def test_kron_matches_elementwise_definition():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    out = kron(a, b)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    assert abs(out[2 * i + k, 2 * j + l] - a[i, j] * b[k, l]) <= 1e-14


def test_partial_trace_of_product_state():
    ra = random_density(2, 1, seed=3).matrix
    rb = random_density(3, 1, seed=4).matrix
    rho = DensityMatrix(np.kron(ra, rb), 2, 3)
    np.testing.assert_allclose(partial_trace(rho, "B"), ra, atol=1e-14)
    np.testing.assert_allclose(partial_trace(rho, "A"), rb, atol=1e-14)


def test_partial_trace_werner_marginal_is_maximally_mixed():
    np.testing.assert_allclose(partial_trace(werner_singlet(0.3), "A"), np.eye(2) / 2, atol=1e-15)


@pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 2)])
def test_partial_trace_matches_index_sum(dims):
    da, db = dims
    rho = random_density(da, db, seed=11)
    m = rho.matrix
    keep_a = np.zeros((da, da), dtype=complex)
    for a in range(da):
        for a2 in range(da):
            keep_a[a, a2] = sum(m[a * db + b, a2 * db + b] for b in range(db))
    keep_b = np.zeros((db, db), dtype=complex)
    for b in range(db):
        for b2 in range(db):
            keep_b[b, b2] = sum(m[a * db + b, a * db + b2] for a in range(da))
    np.testing.assert_allclose(partial_trace(rho, "B"), keep_a, atol=1e-14)
    np.testing.assert_allclose(partial_trace(rho, "A"), keep_b, atol=1e-14)


def test_partial_trace_dimension_mismatch():
    with pytest.raises(DimensionError):
        partial_trace(np.eye(4) / 4, "A", dims=(2, 3))


def test_hermitian_eigenvalues_examples():
    np.testing.assert_allclose(hermitian_eigenvalues(np.eye(2)), [1, 1])
    np.testing.assert_allclose(
        hermitian_eigenvalues(werner_singlet(0.5).matrix), [0.125, 0.125, 0.125, 0.625], atol=1e-14
    )
    with pytest.raises(ValidationError):
        hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))


def test_embed_examples():
    np.testing.assert_array_equal(embed(KET0, "B", 2, 2), np.diag([1, 0, 1, 0]))
    np.testing.assert_array_equal(embed(KET0, "A", 2, 2), np.diag([1, 1, 0, 0]))
    np.testing.assert_array_equal(embed(np.eye(2), "B", 2, 2), np.eye(4))
    with pytest.raises(DimensionError):
        embed(np.eye(3), "B", 2, 2)


def test_density_matrix_rejects_invalid_input():
    with pytest.raises(ValidationError):
        DensityMatrix(np.diag([0.6, 0.6, 0, 0]), 2, 2)
    with pytest.raises(ValidationError):
        DensityMatrix(np.diag([1.1, -0.1, 0, 0]), 2, 2)
    bad = np.eye(4) / 4
    bad = bad.astype(complex)
    bad[0, 1] = 0.1j
    with pytest.raises(ValidationError):
        DensityMatrix(bad, 2, 2)
    with pytest.raises(DimensionError):
        DensityMatrix(np.eye(4) / 4, 2, 3)
    with pytest.raises(DimensionError):
        DensityMatrix(np.eye(81) / 81, 9, 9)


def test_density_matrix_is_immutable():
    rho = werner_singlet(0.5)
    with pytest.raises(ValueError):
        rho.matrix[0, 0] = 1.0


def test_pvm_validation():
    PVM.computational(3)
    with pytest.raises(ValidationError):
        PVM((KET0, KET0))
    with pytest.raises(ValidationError):
        PVM((KET0,))


@settings(max_examples=60)
@given(
    da=st.integers(1, 4),
    db=st.integers(1, 4),
    seed=st.integers(0, 2**32),
    rank_frac=st.floats(0.01, 1.0),
)
def test_partial_trace_returns_valid_states(da, db, seed, rank_frac):
    n = da * db
    rho = random_density(da, db, max(1, round(rank_frac * n)), seed)
    for side in "AB":
        red = partial_trace(rho, side)
        assert np.max(np.abs(red - red.conj().T)) <= 1e-9
        assert abs(np.trace(red).real - 1) <= 1e-9
        assert hermitian_eigenvalues(red)[0] >= -1e-9


def test_eigenvalue_sum_equals_trace_for_many_hermitian_matrices():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        n = int(rng.integers(1, 17))
        z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        h = z + z.conj().T
        ev = hermitian_eigenvalues(h)
        assert np.all(np.diff(ev) >= 0)
        assert abs(ev.sum() - np.trace(h).real) <= 1e-9
