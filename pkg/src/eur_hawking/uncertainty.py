"""Entropic uncertainty for two incompatible qubit measurements with memory.

The left-hand side of the memory-assisted relation is

    H(S|B) + H(R|B),   H(S|B) = S(rho_{S B}) - S(rho_B),

where rho_{S B} is the state dephased in the eigenbasis of the measured
observable on A. The lower bound is S(A|B) + log2(1/c) with c the maximal
squared overlap between the two observables' eigenvectors.

Every scenario quantity exists twice: a spectral route that works on the
density matrix (``eur_lhs_numeric`` / ``eur_bound_numeric``) and closed
forms in the Hawking coefficient a and the noise strengths. The closed
forms carry two documented corrections relative to their published
display: the phase-damping bound eigenvalues are divided by 4 (printed
denominator 16 breaks normalisation) and the weak-measurement
depolarizing form subtracts its marginal-entropy term (printed with a
plus sign). Both are pinned against the spectral route by tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolationError, DomainError
from .linalg import ID2, PAULIS, as_matrix, dagger, partial_trace
from .states import BellParams

ENTROPY_CLIP = -1e-10


def binary_entropy(x: float) -> float:
    """H_bin(x) = -x log2 x - (1-x) log2 (1-x), zero at both endpoints."""
    if not math.isfinite(x):
        raise DomainError(f"binary entropy argument must be finite, got {x}")
    if x < 0.0:
        if x < -1e-12:
            raise DomainError(f"binary entropy argument {x} outside [0, 1]")
        x = 0.0
    if x > 1.0:
        if x > 1.0 + 1e-12:
            raise DomainError(f"binary entropy argument {x} outside [0, 1]")
        x = 1.0
    if x == 0.0 or x == 1.0:
        return 0.0
    return float(-x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x))


def entropy_from_eigenvalues(values, nonpositive: str = "raise") -> float:
    """Shannon entropy in bits of a probability vector.

    Eigenvalues in [-1e-10, 0) are numerical slack and are always clipped
    to zero. Anything more negative raises, unless ``nonpositive="clip"``:
    that mode extends the clipping to quasi-physical spectra (correlation
    matrices outside the positivity tetrahedron) and is only reached
    through explicitly flagged evaluation paths.
    """
    vals = np.asarray(values, dtype=float)
    if vals.min() < ENTROPY_CLIP and nonpositive != "clip":
        raise ContractViolationError(
            f"eigenvalue {vals.min():.3e} below the positivity floor {ENTROPY_CLIP}"
        )
    vals = np.clip(vals, 0.0, None)
    nz = vals[vals > 0.0]
    return float(-(nz * np.log2(nz)).sum())


def von_neumann_entropy(rho, nonpositive: str = "raise") -> float:
    """S(rho) = -sum_i lambda_i log2 lambda_i over the spectrum of rho."""
    rho = as_matrix(rho, "rho")
    values = np.linalg.eigvalsh((rho + dagger(rho)) / 2)
    return entropy_from_eigenvalues(values, nonpositive)


def _neg_sum_plogp(values, nonpositive: str = "raise") -> float:
    return entropy_from_eigenvalues(values, nonpositive)


@dataclass(frozen=True)
class ObservablePair:
    """Two single-qubit observables given as unit Bloch vectors."""

    first: tuple[float, float, float]
    second: tuple[float, float, float]

    def validate(self) -> "ObservablePair":
        for label, n in (("first", self.first), ("second", self.second)):
            norm = math.sqrt(sum(v * v for v in n))
            if abs(norm - 1.0) > 1e-12:
                raise DomainError(f"{label} Bloch vector has norm {norm}, expected 1")
        return self

    @property
    def overlap_c(self) -> float:
        """Maximal squared overlap of the eigenvectors: (1 + |n1 . n2|) / 2."""
        dot = sum(u * v for u, v in zip(self.first, self.second))
        return 0.5 * (1.0 + abs(dot))


SIGMA_XZ_PAIR = ObservablePair(first=(1.0, 0.0, 0.0), second=(0.0, 0.0, 1.0))


def _bloch_projectors(n: tuple[float, float, float]) -> tuple[np.ndarray, np.ndarray]:
    op = sum(c * s for c, s in zip(n, PAULIS))
    plus = (ID2 + op) / 2
    return plus, ID2 - plus


def dephase_after_measurement(rho_ab, observable: tuple[float, float, float]) -> np.ndarray:
    """sum_e (Pi_e (x) I) rho (Pi_e (x) I) for the observable's eigenprojectors on A."""
    rho_ab = as_matrix(rho_ab, "rho_ab")
    if rho_ab.shape != (4, 4):
        raise DomainError(f"dephasing expects a 4x4 state, got {rho_ab.shape}")
    norm = math.sqrt(sum(v * v for v in observable))
    if abs(norm - 1.0) > 1e-12:
        raise DomainError(f"observable Bloch vector has norm {norm}, expected 1")
    out = np.zeros_like(rho_ab)
    for proj in _bloch_projectors(observable):
        lifted = np.kron(proj, ID2)
        out += lifted @ rho_ab @ dagger(lifted)
    return out


def eur_lhs_numeric(rho_ab, pair: ObservablePair = SIGMA_XZ_PAIR) -> float:
    """H(S|B) + H(R|B) computed spectrally from the density matrix."""
    pair.validate()
    s_b = von_neumann_entropy(partial_trace(rho_ab, (2, 2), keep=(1,)))
    s_first = von_neumann_entropy(dephase_after_measurement(rho_ab, pair.first))
    s_second = von_neumann_entropy(dephase_after_measurement(rho_ab, pair.second))
    return s_first + s_second - 2.0 * s_b


def eur_bound_numeric(rho_ab, pair: ObservablePair = SIGMA_XZ_PAIR,
                      nonpositive: str = "raise") -> float:
    """S(rho_AB) - S(rho_B) + log2(1/c)."""
    pair.validate()
    s_ab = von_neumann_entropy(rho_ab, nonpositive)
    s_b = von_neumann_entropy(partial_trace(rho_ab, (2, 2), keep=(1,)), nonpositive)
    return s_ab - s_b + math.log2(1.0 / pair.overlap_c)


def _validate_for(params: BellParams, nonpositive: str) -> None:
    # "clip" admits quasi-physical triples (cube-bounded, outside the
    # positivity tetrahedron); everything else demands a genuine state
    if nonpositive == "clip":
        params.validate_cube()
    else:
        params.validate()


def _check_unit_interval(value: float, label: str) -> float:
    if not (math.isfinite(value) and 0.0 <= value <= 1.0):
        raise DomainError(f"{label} must lie in [0, 1], got {value}")
    return float(value)


# ---------------------------------------------------------------------------
# Depolarizing scenario closed forms
# ---------------------------------------------------------------------------

def _dp_diagonal(c3: float, p: float, a: float) -> tuple[float, float, float, float]:
    a2 = a * a
    l1 = (2 * p - a2 * (1 + c3) * (-3 + 2 * p)) / 12
    l2 = (6 - 2 * p + a2 * (1 + c3) * (-3 + 2 * p)) / 12
    l3 = (2 * p + a2 * (-1 + c3) * (-3 + 2 * p)) / 12
    l4 = (6 - 2 * p - a2 * (-1 + c3) * (-3 + 2 * p)) / 12
    return l1, l2, l3, l4


def _dp_marginal_arg(p: float, a: float) -> float:
    return (a * a * (3 - 2 * p) + 2 * p) / 6


def analytic_u_dp(params: BellParams, p: float, a: float,
                  nonpositive: str = "raise") -> float:
    """Closed-form uncertainty for the depolarizing scenario."""
    _validate_for(params, nonpositive)
    p = _check_unit_interval(p, "p")
    a = _check_unit_interval(a, "a")
    c1, _, c3 = params.as_tuple()
    a2 = a * a
    lam = (3 - 2 * p) * math.sqrt(max(1 + a2 * a2 + a2 * (c1 * c1 - 2), 0.0))
    diag = _dp_diagonal(c3, p, a)
    return (
        binary_entropy((3 + lam) / 6)
        + _neg_sum_plogp(diag)
        - 2 * binary_entropy(_dp_marginal_arg(p, a))
        + 1.0
    )


def analytic_ub_dp(params: BellParams, p: float, a: float,
                   nonpositive: str = "raise") -> float:
    """Closed-form lower bound for the depolarizing scenario."""
    _validate_for(params, nonpositive)
    p = _check_unit_interval(p, "p")
    a = _check_unit_interval(a, "a")
    c1, c2, c3 = params.as_tuple()
    a2 = a * a
    a4 = a2 * a2
    base = (3 - 2 * p) ** 2
    eps = 3 + a2 * c3 * (3 - 2 * p)
    tau = math.sqrt(max(0.0,  # exact zero can cancel to -1e-16 in floats
        base
        + a4 * base
        + a2
        * (
            9 * (-2 + (c1 - c2) ** 2)
            - 12 * (-2 + c1 * c1 - 3 * c1 * c2 + 2 * c2 * c2) * p
            + 4 * (-2 + (c1 - 2 * c2) ** 2) * p * p
        )
    ))
    jay = 3 - a2 * c3 * (3 - 2 * p)
    ell = math.sqrt(max(0.0,
        base
        + a4 * base
        + a2
        * (
            9 * (-2 + (c1 + c2) ** 2)
            - 12 * (-2 + (c1 + c2) * (c1 + 2 * c2)) * p
            + 4 * (-2 + (c1 + 2 * c2) ** 2) * p * p
        )
    ))
    spectrum = ((eps + tau) / 12, (eps - tau) / 12, (jay + ell) / 12, (jay - ell) / 12)
    return 1.0 + _neg_sum_plogp(spectrum, nonpositive) - binary_entropy(_dp_marginal_arg(p, a))


# ---------------------------------------------------------------------------
# Phase-damping scenario closed forms
# ---------------------------------------------------------------------------

def _pd_diagonal(c3: float, a: float) -> tuple[float, float, float, float]:
    a2 = a * a
    return (
        a2 * (1 + c3) / 4,
        (2 - a2 * (1 + c3)) / 4,
        a2 * (1 - c3) / 4,
        (2 + a2 * (-1 + c3)) / 4,
    )


def analytic_u_pd(params: BellParams, q: float, a: float,
                  nonpositive: str = "raise") -> float:
    """Closed-form uncertainty for the phase-damping scenario."""
    _validate_for(params, nonpositive)
    q = _check_unit_interval(q, "q")
    a = _check_unit_interval(a, "a")
    c1, _, c3 = params.as_tuple()
    a2 = a * a
    kappa = math.sqrt(max(1 + a2 * a2 - a2 * (2 + c1 * c1 * (q - 1)), 0.0))
    return (
        binary_entropy((1 + kappa) / 2)
        + _neg_sum_plogp(_pd_diagonal(c3, a))
        - 2 * binary_entropy(a2 / 2)
        + 1.0
    )


def analytic_ub_pd(params: BellParams, q: float, a: float,
                   nonpositive: str = "raise") -> float:
    """Closed-form lower bound for the phase-damping scenario.

    The pair sums (x +/- y) and (sigma +/- upsilon) are divided by 4 so the
    four eigenvalues are normalised; the published display divides by 16.
    """
    _validate_for(params, nonpositive)
    q = _check_unit_interval(q, "q")
    a = _check_unit_interval(a, "a")
    c1, c2, c3 = params.as_tuple()
    a2 = a * a
    a4 = a2 * a2
    x = 1 - a2 * c3
    y = math.sqrt(max(0.0, 1 + a4 + a2 * (-2 - (c1 + c2) ** 2 * (q - 1))))
    sig = 1 + a2 * c3
    ups = math.sqrt(max(0.0, 1 + a4 + a2 * (-2 - (c1 - c2) ** 2 * (q - 1))))
    spectrum = ((x + y) / 4, (x - y) / 4, (sig + ups) / 4, (sig - ups) / 4)
    return _neg_sum_plogp(spectrum, nonpositive) - binary_entropy(a2 / 2) + 1.0


# ---------------------------------------------------------------------------
# Weak-measurement closed forms
# ---------------------------------------------------------------------------

def qwm_dp_diagonal(params: BellParams, p: float, a: float, gamma: float):
    """Diagonal of the renormalised post-measurement depolarizing state."""
    c3 = params.c3
    a2 = a * a
    n = 1.0 / (6.0 * (gamma - 2.0))
    r11 = n * (-2 * p + a2 * (1 + c3) * (-3 + 2 * p))
    r22 = -n * (6 - 2 * p + a2 * (1 + c3) * (-3 + 2 * p))
    r33 = n * ((gamma - 1) * (2 * p + a2 * (-1 + c3) * (-3 + 2 * p)))
    r44 = n * ((1 - gamma) * (2 * (-3 + p) + a2 * (-1 + c3) * (-3 + 2 * p)))
    return r11, r22, r33, r44


def analytic_u_qwm_dp(params: BellParams, p: float, a: float, gamma: float,
                      nonpositive: str = "raise") -> float:
    """Closed-form uncertainty after a weak measurement, depolarizing scenario.

    The marginal-entropy term enters with a minus sign, matching the
    spectral route; the published display carries +2 H_bin(Delta). The
    splitting parameter is negative as printed, which H_bin absorbs through
    its symmetry about 1/2.
    """
    _validate_for(params, nonpositive)
    p = _check_unit_interval(p, "p")
    a = _check_unit_interval(a, "a")
    gamma = _check_unit_interval(gamma, "gamma")
    c1, _, c3 = params.as_tuple()
    a2 = a * a
    g = gamma
    core = (
        (-2 + g) ** 2
        + a2 * a2 * (2 + (-1 + c3) * g) ** 2
        - 2 * a2 * (2 * c1 * c1 * (-1 + g) - (-2 + g) * (2 + (-1 + c3) * g))
    )
    lam_tilde = math.sqrt(max(core, 0.0) * (3 - 2 * p) ** 2) / (12 * (-2 + g))
    delta = (2 * (-2 + g) * p + a2 * (2 + (-1 + c3) * g) * (-3 + 2 * p)) / (6 * (g - 2))
    diag = qwm_dp_diagonal(params, p, a, gamma)
    return (
        binary_entropy((1 + 4 * lam_tilde) / 2)
        + _neg_sum_plogp(diag)
        - 2 * binary_entropy(delta)
        + 1.0
    )


def qwm_pd_diagonal(params: BellParams, a: float, gamma: float):
    """Diagonal of the renormalised post-measurement phase-damping state."""
    c3 = params.c3
    a2 = a * a
    g = gamma
    denom = 2 * (2 - g)
    return (
        a2 * (1 + c3) / denom,
        (2 - a2 * (1 + c3)) / denom,
        a2 * (c3 - 1) * (g - 1) / denom,
        (2 + a2 * (-1 + c3)) * (1 - g) / denom,
    )


def analytic_u_qwm_pd(params: BellParams, q: float, a: float, gamma: float,
                      nonpositive: str = "raise") -> float:
    """Closed-form uncertainty after a weak measurement, phase-damping scenario."""
    _validate_for(params, nonpositive)
    q = _check_unit_interval(q, "q")
    a = _check_unit_interval(a, "a")
    gamma = _check_unit_interval(gamma, "gamma")
    c1, _, c3 = params.as_tuple()
    a2 = a * a
    g = gamma
    core = (
        (g - 2) ** 2
        + a2 * a2 * (2 + (c3 - 1) * g) ** 2
        + 2 * a2 * (2 * c1 * c1 * (q - 1) * (g - 1) + (g - 2) * (2 + (c3 - 1) * g))
    )
    kappa_tilde = math.sqrt(max(core, 0.0)) / (g - 2)
    marginal = a2 * (g - 2 - c3 * g) / (2 * (g - 2))
    diag = qwm_pd_diagonal(params, a, gamma)
    return (
        binary_entropy((1 + kappa_tilde) / 2)
        + _neg_sum_plogp(diag)
        - 2 * binary_entropy(marginal)
        + 1.0
    )
