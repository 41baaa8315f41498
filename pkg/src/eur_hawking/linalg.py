"""Dense complex matrix substrate for small multipartite states (dimension <= 8).

Everything operates on plain ``numpy`` arrays of dtype complex128. The only
eigenproblem in scope is the Hermitian one; there is deliberately no LU, SVD
or general eigensolver here.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import StructuralError

MAX_DIM = 8

ID2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

HERMITICITY_ATOL = 1e-12
TRACE_ATOL = 1e-12
EIGENVALUE_FLOOR = -1e-10


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce to a finite 2-d complex array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise StructuralError(f"{name} must be 2-dimensional, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise StructuralError(f"{name} contains non-finite entries")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def tensor(*factors) -> np.ndarray:
    """Kronecker product of the factors, left to right.

    Entry convention: ((i1*rb + i2), (j1*cb + j2)) = a[i1, j1] * b[i2, j2].
    """
    if not factors:
        raise StructuralError("tensor needs at least one factor")
    out = as_matrix(factors[0])
    for f in factors[1:]:
        out = np.kron(out, as_matrix(f))
    return out


def is_hermitian(m: np.ndarray, atol: float = 1e-10) -> bool:
    m = as_matrix(m)
    return m.shape[0] == m.shape[1] and np.abs(m - dagger(m)).max() <= atol


def assert_density_matrix(
    rho,
    name: str = "rho",
    herm_atol: float = HERMITICITY_ATOL,
    trace_atol: float = TRACE_ATOL,
    psd_floor: float = EIGENVALUE_FLOOR,
    unit_trace: bool = True,
) -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity; return the array.

    ``unit_trace=False`` admits the unnormalised intermediates that appear
    while a weak measurement is being applied.
    """
    rho = as_matrix(rho, name)
    d = rho.shape[0]
    if rho.shape[0] != rho.shape[1]:
        raise StructuralError(f"{name} must be square, got shape {rho.shape}")
    if d not in (2, 4, 8):
        raise StructuralError(f"{name} must have dimension 2, 4 or 8, got {d}")
    herm_dev = np.abs(rho - dagger(rho)).max()
    if herm_dev > herm_atol:
        raise StructuralError(f"{name} is not Hermitian (deviation {herm_dev:.3e})")
    if unit_trace:
        tr_dev = abs(np.trace(rho) - 1.0)
        if tr_dev > trace_atol:
            raise StructuralError(f"{name} trace deviates from 1 by {tr_dev:.3e}")
    min_eig = np.linalg.eigvalsh((rho + dagger(rho)) / 2).min()
    if min_eig < psd_floor:
        raise StructuralError(f"{name} is not positive semidefinite (min eigenvalue {min_eig:.3e})")
    return rho


def partial_trace(rho, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``.

    ``dims`` are the subsystem dimensions in tensor order; kept subsystems
    retain their original relative order.
    """
    rho = as_matrix(rho, "rho")
    dims = [int(d) for d in dims]
    n = len(dims)
    if int(np.prod(dims)) != rho.shape[0] or rho.shape[0] != rho.shape[1]:
        raise StructuralError(
            f"subsystem dimensions {dims} do not factor a {rho.shape} matrix"
        )
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise StructuralError("keep must name at least one subsystem")
    if any(k < 0 or k >= n for k in keep):
        raise StructuralError(f"keep indices {keep} out of range for {n} subsystems")

    reshaped = rho.reshape(dims + dims)
    row = [chr(ord("a") + i) for i in range(n)]
    col = [row[i].upper() if i in keep else row[i] for i in range(n)]
    out = "".join(row[i] for i in keep) + "".join(col[i] for i in keep)
    reduced = np.einsum("".join(row + col) + "->" + out, reshaped)
    d_keep = int(np.prod([dims[i] for i in keep]))
    return reduced.reshape(d_keep, d_keep)


def hermitian_eigen(m, atol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (real, descending) and matching eigenvector columns.

    Raises StructuralError for inputs that are not Hermitian within ``atol``.
    Degenerate clusters carry no eigenvector uniqueness guarantee.
    """
    m = as_matrix(m, "m")
    if m.shape[0] != m.shape[1]:
        raise StructuralError(f"eigendecomposition needs a square matrix, got {m.shape}")
    if np.abs(m - dagger(m)).max() > atol:
        raise StructuralError("matrix is not Hermitian within tolerance")
    values, vectors = np.linalg.eigh((m + dagger(m)) / 2)
    order = np.argsort(-values, kind="stable")
    return values[order].real, vectors[:, order]


def purity(rho) -> float:
    rho = as_matrix(rho, "rho")
    return float(np.trace(rho @ rho).real)
