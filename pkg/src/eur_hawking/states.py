"""Initial states: Bell-diagonal two-qubit states and the horizon embedding.

The memory qubit B is re-expressed in Kruskal modes split across the exterior
(Region I) and interior (Region II) of a Schwarzschild event horizon:

    |0>_B -> a |0>_I |0>_II + b |1>_I |1>_II
    |1>_B -> |1>_I |0>_II

with a = 1/sqrt(1 + exp(-omega/T)) and b = 1/sqrt(1 + exp(omega/T)) at
Hawking temperature T. Region II is physically inaccessible and is traced out.
Subsystem order is fixed project-wide as A (x) B_I (x) B_II, |0> before |1>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .linalg import ID2, PAULIS, as_matrix, assert_density_matrix, partial_trace, tensor

PHYSICALITY_SLACK = -1e-12


@dataclass(frozen=True)
class BellParams:
    """Correlation triple (c1, c2, c3) of a Bell-diagonal state."""

    c1: float
    c2: float
    c3: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.c1, self.c2, self.c3)

    def eigenvalues(self) -> np.ndarray:
        """The four eigenvalues of the Bell-diagonal state, in a fixed order."""
        c1, c2, c3 = self.as_tuple()
        return 0.25 * np.array(
            [1 - c1 - c2 - c3, 1 - c1 + c2 + c3, 1 + c1 - c2 + c3, 1 + c1 + c2 - c3]
        )

    def validate_cube(self) -> "BellParams":
        """Check only |c_i| <= 1 (the correlation-coefficient bound)."""
        for label, c in zip(("c1", "c2", "c3"), self.as_tuple()):
            if not math.isfinite(c) or abs(c) > 1:
                raise DomainError(f"{label}={c} outside [-1, 1]")
        return self

    @property
    def is_physical(self) -> bool:
        """True when the triple lies in the positivity tetrahedron."""
        return bool(max(abs(c) for c in self.as_tuple()) <= 1
                    and self.eigenvalues().min() >= PHYSICALITY_SLACK)

    def validate(self) -> "BellParams":
        self.validate_cube()
        eigs = self.eigenvalues()
        if eigs.min() < PHYSICALITY_SLACK:
            k = int(np.argmin(eigs))
            labels = ("(1-c1-c2-c3)/4", "(1-c1+c2+c3)/4", "(1+c1-c2+c3)/4", "(1+c1+c2-c3)/4")
            raise DomainError(
                f"unphysical Bell parameters {self.as_tuple()}: eigenvalue "
                f"{labels[k]} = {eigs[k]:.6g} is negative"
            )
        return self


def _bell_matrix(params: BellParams) -> np.ndarray:
    # no positivity check; quasi-physical callers go through here knowingly
    rho = np.eye(4, dtype=complex)
    for c, sigma in zip(params.as_tuple(), PAULIS):
        rho += c * tensor(sigma, sigma)
    return rho / 4.0


def bell_diagonal(params: BellParams) -> np.ndarray:
    """rho = (1/4) (I (x) I + sum_i c_i sigma_i (x) sigma_i), a 4x4 X-state."""
    params.validate()
    return _bell_matrix(params)


def hawking_coeffs(omega: float, temperature: float) -> tuple[float, float]:
    """Mode-mixing coefficients (a, b) at frequency omega and temperature T.

    T = 0 is the exact limit (a, b) = (1, 0); T -> infinity tends to
    (1/sqrt(2), 1/sqrt(2)). Always a^2 + b^2 = 1.
    """
    if not (math.isfinite(omega) and omega > 0):
        raise DomainError(f"omega must be positive, got {omega}")
    if not (math.isfinite(temperature) and temperature >= 0):
        raise DomainError(f"temperature must be non-negative, got {temperature}")
    if temperature == 0:
        return 1.0, 0.0
    u = math.exp(-omega / temperature)  # underflows to 0 for T << omega
    a = 1.0 / math.sqrt(1.0 + u)
    b = math.sqrt(u / (1.0 + u))
    return a, b


@dataclass(frozen=True)
class HawkingMode:
    """A single Dirac mode of frequency omega seen at Hawking temperature T."""

    omega: float
    temperature: float
    a: float
    b: float

    @classmethod
    def from_temperature(cls, omega: float, temperature: float) -> "HawkingMode":
        a, b = hawking_coeffs(omega, temperature)
        return cls(omega=omega, temperature=temperature, a=a, b=b)


def _embedding_isometry(a: float, b: float) -> np.ndarray:
    # Columns act on |0>_B, |1>_B; rows are |00>,|01>,|10>,|11> of B_I (x) B_II.
    return np.array([[a, 0.0], [0.0, 0.0], [0.0, 1.0], [b, 0.0]], dtype=complex)


def embed_hawking(rho_ab, mode: HawkingMode, validate_input: bool = True) -> np.ndarray:
    """Lift a 4x4 state of A (x) B to the 8x8 space A (x) B_I (x) B_II.

    ``validate_input=False`` skips the positivity check so that
    quasi-physical correlation matrices can be pushed through the same
    pipeline (their rows are flagged downstream).
    """
    if validate_input:
        rho_ab = assert_density_matrix(rho_ab, "rho_ab")
    else:
        rho_ab = as_matrix(rho_ab, "rho_ab")
    if rho_ab.shape[0] != 4:
        raise DomainError(f"embed_hawking expects a 4x4 state, got {rho_ab.shape}")
    w = np.kron(ID2, _embedding_isometry(mode.a, mode.b))
    return w @ rho_ab @ np.conj(w).T


def trace_region_ii(rho_abb) -> np.ndarray:
    """Reduce A (x) B_I (x) B_II to A (x) B_I by tracing the interior mode."""
    rho_abb = as_matrix(rho_abb, "rho_abb")
    if rho_abb.shape != (8, 8):
        raise DomainError(f"trace_region_ii expects an 8x8 state, got {rho_abb.shape}")
    return partial_trace(rho_abb, (2, 2, 2), keep=(0, 1))
