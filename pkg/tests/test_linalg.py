import numpy as np
import pytest

from conftest import random_density_matrix
from eur_hawking import StructuralError, hermitian_eigen, partial_trace, tensor
from eur_hawking.linalg import ID2, SIGMA_X, SIGMA_Z


def test_tensor_identities():
    assert np.array_equal(tensor(ID2, ID2), np.eye(4))
    assert np.array_equal(tensor(SIGMA_Z, SIGMA_Z), np.diag([1, -1, -1, 1]).astype(complex))


def test_tensor_entry_ordering():
    a = np.array([[1, 2], [3, 4]], dtype=complex)
    b = np.array([[5, 6], [7, 8]], dtype=complex)
    out = tensor(a, b)
    assert out[0, 0] == 5 and out[0, 2] == 10  # a[0,1] * b[0,0]
    assert out[3, 1] == 3 * 8  # a[1,0] * b[1,1]


def test_tensor_builds_bell_projector():
    # (1/4)(I + sx sx - sy sy + sz sz) is the |00>+|11> projector
    from eur_hawking.linalg import SIGMA_Y

    rho = 0.25 * (
        tensor(ID2, ID2)
        + tensor(SIGMA_X, SIGMA_X)
        - tensor(SIGMA_Y, SIGMA_Y)
        + tensor(SIGMA_Z, SIGMA_Z)
    )
    phi = np.zeros(4, dtype=complex)
    phi[0] = phi[3] = 1 / np.sqrt(2)
    assert np.abs(rho - np.outer(phi, phi.conj())).max() < 1e-15


def test_tensor_associative_exactly_on_dyadic_entries(rng):
    # entries are integers over 2^4, so float multiplication is exact
    for _ in range(25):
        mats = [rng.integers(-8, 9, size=(2, 2)).astype(complex) / 16 for _ in range(3)]
        left = tensor(tensor(mats[0], mats[1]), mats[2])
        right = tensor(mats[0], tensor(mats[1], mats[2]))
        assert np.array_equal(left, right)


def test_partial_trace_product_state(rng):
    rho_a = random_density_matrix(rng, 2)
    rho_b = random_density_matrix(rng, 2)
    joint = tensor(rho_a, rho_b)
    assert np.abs(partial_trace(joint, (2, 2), keep=(0,)) - rho_a).max() < 1e-12
    assert np.abs(partial_trace(joint, (2, 2), keep=(1,)) - rho_b).max() < 1e-12


def test_partial_trace_bell_marginal():
    phi = np.zeros(4, dtype=complex)
    phi[0] = phi[3] = 1 / np.sqrt(2)
    rho = np.outer(phi, phi.conj())
    reduced = partial_trace(rho, (2, 2), keep=(1,))
    assert np.abs(reduced - np.eye(2) / 2).max() < 1e-15


def test_partial_trace_composes(rng):
    for _ in range(20):
        rho = random_density_matrix(rng, 8)
        joint = partial_trace(rho, (2, 2, 2), keep=(0,))
        stepwise = partial_trace(
            partial_trace(rho, (2, 2, 2), keep=(0, 1)), (2, 2), keep=(0,)
        )
        assert np.abs(joint - stepwise).max() < 1e-12
        assert abs(np.trace(joint) - 1.0) < 1e-12


def test_partial_trace_dimension_mismatch():
    with pytest.raises(StructuralError):
        partial_trace(np.eye(4) / 4, (2, 3), keep=(0,))
    with pytest.raises(StructuralError):
        partial_trace(np.eye(4) / 4, (2, 2), keep=())


def test_hermitian_eigen_simple_cases():
    values, _ = hermitian_eigen(np.eye(2) / 2)
    assert np.allclose(values, [0.5, 0.5])
    values, vectors = hermitian_eigen(SIGMA_X)
    assert np.allclose(values, [1.0, -1.0])
    plus = vectors[:, 0]
    assert abs(abs(plus @ np.array([1, 1]) / np.sqrt(2)) - 1) < 1e-12


def test_hermitian_eigen_contract(rng):
    # 100 seeds across dims 2..8: reconstruction and trace identities
    for seed in range(100):
        local = np.random.default_rng(seed)
        dim = 2 + seed % 7
        g = local.normal(size=(dim, dim)) + 1j * local.normal(size=(dim, dim))
        m = (g + g.conj().T) / 2
        values, vectors = hermitian_eigen(m)
        assert np.all(np.diff(values) <= 1e-12)  # descending
        recon = vectors @ np.diag(values) @ vectors.conj().T
        assert np.abs(recon - m).max() < 1e-10
        assert abs(values.sum() - np.trace(m).real) < 1e-10
        assert np.abs(vectors @ vectors.conj().T - np.eye(dim)).max() < 1e-10


def test_hermitian_eigen_rejects_non_hermitian():
    with pytest.raises(StructuralError):
        hermitian_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))
