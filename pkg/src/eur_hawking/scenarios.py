"""Scenario state families and single-point evaluation.

Two noise scenarios act on a Bell-diagonal pair whose memory qubit sits near
the horizon:

* ``dp`` (depolarizing scenario): after the horizon embedding, the exterior
  Region-I mode picks up x/z Pauli mixing with weight p/3 each
  (``channels.pauli_xz_channel``). Its reduced A-B_I matrix has the closed
  form implemented in ``dp_reduced_state``; the Kraus construction and the
  closed form agree entrywise to 1e-12 and tests pin both. Note that this is
  *not* the action of ``channels.depolarizing_channel`` on A, which rescales
  all three correlation coefficients uniformly and produces a different
  family; the closed forms, the figure sweeps and every published curve
  belong to the family built here.

* ``pd`` (phase-damping scenario): phase damping with strength q acts on A,
  commuting with the embedding; the reduced matrix is ``pd_reduced_state``.

An optional weak measurement diag(1, sqrt(1-gamma)) on A post-selects the
reduced state and renormalises by the success probability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channels import (
    apply_on_a,
    apply_on_subsystem,
    pauli_xz_channel,
    phase_damping_channel,
    weak_measurement,
)
from .correlations import discord_xstate_closed_form, mixedness
from .errors import ContractViolationError, DomainError
from .linalg import assert_density_matrix, partial_trace
from .states import (
    BellParams,
    HawkingMode,
    _bell_matrix,
    embed_hawking,
    trace_region_ii,
)
from .uncertainty import (
    SIGMA_XZ_PAIR,
    ObservablePair,
    analytic_u_dp,
    analytic_u_pd,
    analytic_u_qwm_dp,
    analytic_u_qwm_pd,
    analytic_ub_dp,
    analytic_ub_pd,
    eur_bound_numeric,
    eur_lhs_numeric,
    von_neumann_entropy,
)

FAMILIES = ("dp", "pd")
DUAL_PATH_ATOL = 1e-9
CONSTRUCTION_ATOL = 1e-12
INEQUALITY_SLACK = 1e-9


def _check_knob(value: float, label: str) -> None:
    if not (math.isfinite(value) and 0.0 <= value <= 1.0):
        raise DomainError(f"{label} must lie in [0, 1], got {value}")


def dp_reduced_state(params: BellParams, p: float, a: float) -> np.ndarray:
    """Closed-form reduced A-B_I matrix of the depolarizing scenario.

    Defined for any cube-bounded correlation triple; positivity of the
    output tracks positivity of the input (see evaluate_point).
    """
    params.validate_cube()
    _check_knob(p, "p")
    _check_knob(a, "a")
    c1, c2, c3 = params.as_tuple()
    a2 = a * a
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = (2 * p - a2 * (1 + c3) * (-3 + 2 * p)) / 12
    rho[1, 1] = (6 - 2 * p + a2 * (1 + c3) * (-3 + 2 * p)) / 12
    rho[2, 2] = (2 * p + a2 * (-1 + c3) * (-3 + 2 * p)) / 12
    rho[3, 3] = (6 - 2 * p - a2 * (-1 + c3) * (-3 + 2 * p)) / 12
    rho[0, 3] = rho[3, 0] = a * (c1 * (3 - 2 * p) + c2 * (-3 + 4 * p)) / 12
    rho[1, 2] = rho[2, 1] = a * (c1 + c2) / 4 - a * (c1 + 2 * c2) * p / 6
    return rho


def dp_reduced_state_constructive(params: BellParams, p: float, mode: HawkingMode) -> np.ndarray:
    """Kraus-pipeline route: embed, x/z-mix the Region-I mode, trace Region II."""
    params.validate_cube()
    embedded = embed_hawking(_bell_matrix(params), mode, validate_input=False)
    noisy, _ = apply_on_subsystem(embedded, (2, 2, 2), 1, pauli_xz_channel(p))
    return trace_region_ii(noisy)


def pd_reduced_state(params: BellParams, q: float, a: float) -> np.ndarray:
    """Closed-form reduced A-B_I matrix of the phase-damping scenario."""
    params.validate_cube()
    _check_knob(q, "q")
    _check_knob(a, "a")
    c1, c2, c3 = params.as_tuple()
    a2 = a * a
    root = math.sqrt(1 - q)
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = a2 * (1 + c3) / 4
    rho[1, 1] = (2 - a2 * (1 + c3)) / 4
    rho[2, 2] = a2 * (1 - c3) / 4
    rho[3, 3] = (2 + a2 * (-1 + c3)) / 4
    rho[0, 3] = rho[3, 0] = a * (c1 - c2) * root / 4
    rho[1, 2] = rho[2, 1] = a * (c1 + c2) * root / 4
    return rho


def pd_reduced_state_constructive(params: BellParams, q: float, mode: HawkingMode) -> np.ndarray:
    """Kraus-pipeline route: phase-damp A, embed, trace Region II."""
    params.validate_cube()
    noisy, _ = apply_on_a(_bell_matrix(params), phase_damping_channel(q))
    return trace_region_ii(embed_hawking(noisy, mode, validate_input=False))


def weak_measured(rho, gamma: float) -> tuple[np.ndarray, float]:
    """Apply diag(1, sqrt(1-gamma)) on A and renormalise; returns (state, P_succ)."""
    return apply_on_a(rho, weak_measurement(gamma))


def qwm_dp_state_elements(params: BellParams, p: float, a: float, gamma: float) -> np.ndarray:
    """Post-measurement depolarizing state from its published element list."""
    c1, c2, c3 = params.as_tuple()
    a2 = a * a
    g = gamma
    n = 1.0 / (6.0 * (g - 2.0))
    root = math.sqrt(1.0 - g)
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = n * (-2 * p + a2 * (1 + c3) * (-3 + 2 * p))
    rho[1, 1] = -n * (6 - 2 * p + a2 * (1 + c3) * (-3 + 2 * p))
    rho[2, 2] = n * ((g - 1) * (2 * p + a2 * (-1 + c3) * (-3 + 2 * p)))
    rho[3, 3] = n * ((1 - g) * (2 * (-3 + p) + a2 * (-1 + c3) * (-3 + 2 * p)))
    rho[0, 3] = rho[3, 0] = n * (a * root * (c2 * (3 - 4 * p) + c1 * (-3 + 2 * p)))
    rho[1, 2] = rho[2, 1] = n * (a * root * (-3 * (c1 + c2) + 2 * (c1 + 2 * c2) * p))
    return rho


def qwm_dp_mixedness_display(params: BellParams, p: float, a: float, gamma: float) -> float:
    """Published mixedness display for the post-measurement depolarizing state.

    Equals (4/3)(1 - sum_i rho_ii^2), the diagonal-only purity: the display
    omits the off-diagonal purity contributions 2|rho14|^2 + 2|rho23|^2, so
    it is not the mixedness of the state whenever those entries are nonzero.
    ``correlations.mixedness`` is the exported quantity; this form is kept
    for the comparison tests.
    """
    c3 = params.c3
    a2 = a * a
    g = gamma
    t1 = (g - 1) ** 2 * (a2 * (c3 - 1) * (2 * p - 3) + 2 * (p - 3)) ** 2
    t2 = (g - 1) ** 2 * (a2 * (c3 - 1) * (2 * p - 3) + 2 * p) ** 2
    t3 = (a2 * (c3 + 1) * (2 * p - 3) - 2 * p) ** 2
    t4 = (a2 * (c3 + 1) * (2 * p - 3) - 2 * p + 6) ** 2
    return 4.0 / 3.0 * (1.0 - (t1 + t2 + t3 + t4) / (36.0 * (g - 2) ** 2))


@dataclass(frozen=True)
class UncertaintyReport:
    """Every quantity at one parameter point, both computation paths."""

    lhs_numeric: float
    lhs_analytic: float
    bound_numeric: float
    bound_analytic: float
    conditional_entropy: float
    discord: float
    mixedness: float
    success_probability: float
    flags: tuple[str, ...] = field(default_factory=tuple)

    @property
    def status(self) -> str:
        return "ok" if not self.flags else ";".join(self.flags)


def _scenario_state(family: str, params: BellParams, strength: float, mode: HawkingMode,
                    verify_construction: bool, psd_floor: float) -> np.ndarray:
    if family == "dp":
        rho = dp_reduced_state(params, strength, mode.a)
        alt_builder = dp_reduced_state_constructive
    elif family == "pd":
        rho = pd_reduced_state(params, strength, mode.a)
        alt_builder = pd_reduced_state_constructive
    else:
        raise DomainError(f"unknown noise family {family!r}, expected one of {FAMILIES}")
    if verify_construction:
        dev = np.abs(rho - alt_builder(params, strength, mode)).max()
        if dev > CONSTRUCTION_ATOL:
            raise ContractViolationError(
                f"{family} closed form and Kraus construction disagree by {dev:.3e}"
            )
    return assert_density_matrix(rho, f"{family} reduced state", psd_floor=psd_floor)


def evaluate_point(
    family: str,
    params: BellParams,
    strength: float,
    t_over_omega: float,
    omega: float = 1.0,
    gamma: float = 0.0,
    pair: ObservablePair = SIGMA_XZ_PAIR,
    verify_construction: bool = True,
    strict_physicality: bool = True,
) -> UncertaintyReport:
    """Evaluate one parameter point of a scenario, both computation paths.

    ``strength`` is p for the dp family and q for the pd family. The weak
    measurement is applied when gamma > 0. Analytic-vs-numeric deviations
    beyond 1e-9 and bound violations are recorded in ``flags`` rather than
    raised; structural problems raise.

    ``strict_physicality=False`` admits cube-bounded correlation triples
    outside the positivity tetrahedron (several published figure parameter
    sets are of this kind). Such points carry the flag
    ``nonpositive_state`` and all spectral quantities clip the negative
    part of the spectrum.
    """
    if strict_physicality:
        params.validate()
    else:
        params.validate_cube()
    if not (math.isfinite(t_over_omega) and t_over_omega >= 0):
        raise DomainError(f"T/omega must be non-negative, got {t_over_omega}")
    mode = HawkingMode.from_temperature(omega, t_over_omega * omega)
    psd_floor = -1e-10 if strict_physicality else -1.0
    rho = _scenario_state(family, params, strength, mode, verify_construction, psd_floor)

    flags: list[str] = []
    p_succ = 1.0
    if gamma > 0.0:
        rho, p_succ = weak_measured(rho, gamma)
        rho = assert_density_matrix(rho, "post-measurement state", psd_floor=psd_floor)

    # clip mode never changes values on genuine states; the flag records
    # the points whose spectrum actually went negative
    nonpositive = "raise" if strict_physicality else "clip"
    if np.linalg.eigvalsh(rho).min() < -1e-10:
        flags.append("nonpositive_state")

    lhs_numeric = eur_lhs_numeric(rho, pair)
    bound_numeric = eur_bound_numeric(rho, pair, nonpositive=nonpositive)
    s_b = von_neumann_entropy(partial_trace(rho, (2, 2), keep=(1,)))
    conditional = von_neumann_entropy(rho, nonpositive=nonpositive) - s_b

    a = mode.a
    if gamma > 0.0:
        if family == "dp":
            lhs_analytic = analytic_u_qwm_dp(params, strength, a, gamma, nonpositive=nonpositive)
        else:
            lhs_analytic = analytic_u_qwm_pd(params, strength, a, gamma, nonpositive=nonpositive)
        bound_analytic = bound_numeric  # no separate closed form after post-selection
    elif family == "dp":
        lhs_analytic = analytic_u_dp(params, strength, a, nonpositive=nonpositive)
        bound_analytic = analytic_ub_dp(params, strength, a, nonpositive=nonpositive)
    else:
        lhs_analytic = analytic_u_pd(params, strength, a, nonpositive=nonpositive)
        bound_analytic = analytic_ub_pd(params, strength, a, nonpositive=nonpositive)

    if abs(lhs_analytic - lhs_numeric) > DUAL_PATH_ATOL:
        flags.append("dual_path_mismatch_u")
    if abs(bound_analytic - bound_numeric) > DUAL_PATH_ATOL:
        flags.append("dual_path_mismatch_ub")
    if lhs_numeric < bound_numeric - INEQUALITY_SLACK:
        flags.append("inequality_violation")

    return UncertaintyReport(
        lhs_numeric=lhs_numeric,
        lhs_analytic=lhs_analytic,
        bound_numeric=bound_numeric,
        bound_analytic=bound_analytic,
        conditional_entropy=conditional,
        discord=discord_xstate_closed_form(rho, nonpositive=nonpositive).discord,
        mixedness=mixedness(rho).mixedness,
        success_probability=p_succ,
        flags=tuple(flags),
    )
