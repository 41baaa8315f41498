"""Quantum discord and mixedness.

Discord is computed two ways. The closed form for X-shaped states scans the
two standard measurement families on B (the z axis and the best equatorial
axis) and takes their minimum. The numeric oracle minimises the measured
conditional entropy over all projective B measurements with a coarse
(theta, phi) grid followed by deterministic coordinate descent; it is
independent of the closed form and can only find an equal or lower minimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .linalg import ID2, PAULIS, as_matrix, partial_trace
from .uncertainty import binary_entropy, entropy_from_eigenvalues, von_neumann_entropy

X_SHAPE_ATOL = 1e-12
DEFAULT_GRID = (64, 128)
ANGLE_RESOLUTION = 1e-5


@dataclass(frozen=True)
class DiscordResult:
    discord: float
    mutual_information: float
    classical_correlation: float
    branch_used: str  # "L1" | "L2" | "numeric"
    measurement_angles: Optional[tuple[float, float]] = None


@dataclass(frozen=True)
class MixednessResult:
    mixedness: float
    purity: float
    dimension: int


def mixedness(rho) -> MixednessResult:
    """M(rho) = d/(d-1) (1 - Tr rho^2); 0 for pure states, 1 for I/d."""
    rho = as_matrix(rho, "rho")
    d = rho.shape[0]
    pur = float(np.trace(rho @ rho).real)
    return MixednessResult(mixedness=d / (d - 1) * (1.0 - pur), purity=pur, dimension=d)


def is_x_state(rho, atol: float = X_SHAPE_ATOL) -> bool:
    rho = as_matrix(rho, "rho")
    if rho.shape != (4, 4):
        return False
    mask = np.array(
        [
            [1, 0, 0, 1],
            [0, 1, 1, 0],
            [0, 1, 1, 0],
            [1, 0, 0, 1],
        ],
        dtype=bool,
    )
    return bool(np.abs(rho[~mask]).max() <= atol)


def _marginal_entropies(rho, nonpositive: str = "raise") -> tuple[float, float, float]:
    s_a = von_neumann_entropy(partial_trace(rho, (2, 2), keep=(0,)))
    s_b = von_neumann_entropy(partial_trace(rho, (2, 2), keep=(1,)))
    s_ab = von_neumann_entropy(rho, nonpositive)
    return s_a, s_b, s_ab


def discord_xstate_closed_form(rho, nonpositive: str = "raise") -> DiscordResult:
    """Discord of an X-state from the two-branch measurement ansatz on B.

    Q = H_bin(rho22 + rho44) + sum_i chi_i log2 chi_i + min{L1, L2} with
    chi_i the eigenvalues of rho, L2 the z-axis branch and L1 the best
    equatorial branch H_bin(xi),
    xi = (1 + sqrt((1 - 2(rho33 + rho44))^2 + 4 (|rho14| + |rho23|)^2)) / 2.
    Ties report branch L1.
    """
    rho = as_matrix(rho, "rho")
    if not is_x_state(rho):
        raise DomainError(
            "state is not X-shaped within tolerance; use discord_numeric instead"
        )
    d = np.real(np.diag(rho))
    r14 = abs(rho[0, 3])
    r23 = abs(rho[1, 2])
    chi = np.linalg.eigvalsh(rho)

    xi = (1.0 + math.sqrt((1.0 - 2.0 * (d[2] + d[3])) ** 2 + 4.0 * (r14 + r23) ** 2)) / 2.0
    branch_l1 = binary_entropy(xi)
    branch_l2 = entropy_from_eigenvalues(d) - binary_entropy(d[0] + d[2])

    minimum = min(branch_l1, branch_l2)
    branch = "L1" if branch_l1 <= branch_l2 else "L2"
    discord = binary_entropy(d[1] + d[3]) - entropy_from_eigenvalues(chi, nonpositive) + minimum

    s_a, s_b, s_ab = _marginal_entropies(rho, nonpositive)
    mutual = s_a + s_b - s_ab
    return DiscordResult(
        discord=discord,
        mutual_information=mutual,
        classical_correlation=mutual - discord,
        branch_used=branch,
    )


def _bloch_decomposition(rho) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    r = np.array([np.trace(rho @ np.kron(s, ID2)).real for s in PAULIS])
    s_vec = np.array([np.trace(rho @ np.kron(ID2, s)).real for s in PAULIS])
    t = np.array(
        [[np.trace(rho @ np.kron(si, sj)).real for sj in PAULIS] for si in PAULIS]
    )
    return r, s_vec, t


def measured_conditional_entropy(rho, thetas, phis) -> np.ndarray:
    """S(A | {Pi_B(theta, phi)}) on the grid thetas x phis, vectorised.

    For a projective measurement along axis n on B, outcome probabilities are
    p_+- = (1 +- s.n)/2 and the conditional A states have Bloch vectors
    (r +- T n) / (2 p_+-).
    """
    rho = as_matrix(rho, "rho")
    if rho.shape != (4, 4):
        raise DomainError(f"expected a two-qubit state, got shape {rho.shape}")
    r, s_vec, t = _bloch_decomposition(rho)
    th, ph = np.meshgrid(np.atleast_1d(thetas), np.atleast_1d(phis), indexing="ij")
    axes = np.stack(
        [np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)], axis=-1
    )
    s_dot = axes @ s_vec
    t_dot = axes @ t.T
    total = np.zeros_like(th)
    for sign in (1.0, -1.0):
        prob = (1.0 + sign * s_dot) / 2.0
        w = r[None, None, :] + sign * t_dot
        norm = np.sqrt((w * w).sum(axis=-1))
        with np.errstate(divide="ignore", invalid="ignore"):
            radius = np.where(prob > 1e-15, norm / (2.0 * prob), 0.0)
        radius = np.clip(radius, 0.0, 1.0)
        x = (1.0 + radius) / 2.0
        h = np.zeros_like(x)
        interior = (x > 0.0) & (x < 1.0)
        xi = x[interior]
        h[interior] = -xi * np.log2(xi) - (1.0 - xi) * np.log2(1.0 - xi)
        total += prob * h
    return total


def _refine_minimum(rho, theta: float, phi: float, step_theta: float, step_phi: float) -> tuple[float, float, float]:
    # Deterministic coordinate descent with step halving down to ANGLE_RESOLUTION.
    best = float(measured_conditional_entropy(rho, [theta], [phi])[0, 0])
    while step_theta > ANGLE_RESOLUTION or step_phi > ANGLE_RESOLUTION:
        improved = False
        for cand_theta, cand_phi in (
            (theta + step_theta, phi),
            (theta - step_theta, phi),
            (theta, phi + step_phi),
            (theta, phi - step_phi),
        ):
            value = float(measured_conditional_entropy(rho, [cand_theta], [cand_phi])[0, 0])
            if value < best - 1e-15:
                best, theta, phi = value, cand_theta, cand_phi
                improved = True
        if not improved:
            step_theta /= 2.0
            step_phi /= 2.0
    return best, theta, phi


def discord_numeric(rho, grid: tuple[int, int] = DEFAULT_GRID) -> DiscordResult:
    """Discord from a grid-plus-descent minimisation over projective B measurements."""
    rho = as_matrix(rho, "rho")
    n_theta, n_phi = grid
    thetas = np.linspace(0.0, math.pi, n_theta)
    phis = np.linspace(0.0, 2.0 * math.pi, n_phi, endpoint=False)
    values = measured_conditional_entropy(rho, thetas, phis)
    flat_index = int(np.argmin(values))  # first occurrence: deterministic tie-break
    i, j = divmod(flat_index, n_phi)
    best, theta, phi = _refine_minimum(
        rho,
        float(thetas[i]),
        float(phis[j]),
        step_theta=math.pi / (n_theta - 1),
        step_phi=2.0 * math.pi / n_phi,
    )
    s_a, s_b, s_ab = _marginal_entropies(rho)
    mutual = s_a + s_b - s_ab
    classical = s_a - best
    return DiscordResult(
        discord=mutual - classical,
        mutual_information=mutual,
        classical_correlation=classical,
        branch_used="numeric",
        measurement_angles=(theta, phi),
    )
