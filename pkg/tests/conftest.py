import numpy as np
import pytest

from eur_hawking import BellParams, hawking_coeffs


def random_bell(rng) -> BellParams:
    """Uniform sample from the physical Bell-parameter tetrahedron."""
    while True:
        c = rng.uniform(-1.0, 1.0, size=3)
        params = BellParams(*c)
        if params.eigenvalues().min() >= 0.0:
            return params


def random_density_matrix(rng, dim: int) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def a_of(t_over_omega: float) -> float:
    return hawking_coeffs(1.0, t_over_omega)[0]


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
