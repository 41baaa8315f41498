"""Entropic uncertainty with a quantum memory near a Schwarzschild horizon."""

__version__ = "0.1.0"

from .channels import (
    KrausChannel,
    NoiseParams,
    apply_on_a,
    apply_on_subsystem,
    depolarizing_channel,
    pauli_xz_channel,
    phase_damping_channel,
    weak_measurement,
)
from .correlations import (
    DiscordResult,
    MixednessResult,
    discord_numeric,
    discord_xstate_closed_form,
    mixedness,
)
from .errors import ContractViolationError, DomainError, PostSelectionError, StructuralError
from .linalg import hermitian_eigen, partial_trace, tensor
from .scenarios import (
    UncertaintyReport,
    dp_reduced_state,
    dp_reduced_state_constructive,
    evaluate_point,
    pd_reduced_state,
    pd_reduced_state_constructive,
    weak_measured,
)
from .states import (
    BellParams,
    HawkingMode,
    bell_diagonal,
    embed_hawking,
    hawking_coeffs,
    trace_region_ii,
)
from .uncertainty import (
    ObservablePair,
    SIGMA_XZ_PAIR,
    analytic_u_dp,
    analytic_u_pd,
    analytic_u_qwm_dp,
    analytic_u_qwm_pd,
    analytic_ub_dp,
    analytic_ub_pd,
    binary_entropy,
    dephase_after_measurement,
    eur_bound_numeric,
    eur_lhs_numeric,
    von_neumann_entropy,
)
from .sweeps import PRESETS, AxisSpec, FigureManifest, SweepSpec, parse_sweep_config, run_sweep

__all__ = [
    "AxisSpec",
    "BellParams",
    "ContractViolationError",
    "DiscordResult",
    "DomainError",
    "FigureManifest",
    "HawkingMode",
    "KrausChannel",
    "MixednessResult",
    "NoiseParams",
    "ObservablePair",
    "PRESETS",
    "PostSelectionError",
    "SIGMA_XZ_PAIR",
    "StructuralError",
    "SweepSpec",
    "UncertaintyReport",
    "analytic_u_dp",
    "analytic_u_pd",
    "analytic_u_qwm_dp",
    "analytic_u_qwm_pd",
    "analytic_ub_dp",
    "analytic_ub_pd",
    "apply_on_a",
    "apply_on_subsystem",
    "bell_diagonal",
    "binary_entropy",
    "dephase_after_measurement",
    "depolarizing_channel",
    "discord_numeric",
    "discord_xstate_closed_form",
    "dp_reduced_state",
    "dp_reduced_state_constructive",
    "embed_hawking",
    "eur_bound_numeric",
    "eur_lhs_numeric",
    "evaluate_point",
    "hawking_coeffs",
    "hermitian_eigen",
    "mixedness",
    "partial_trace",
    "parse_sweep_config",
    "pauli_xz_channel",
    "pd_reduced_state",
    "pd_reduced_state_constructive",
    "phase_damping_channel",
    "run_sweep",
    "tensor",
    "trace_region_ii",
    "von_neumann_entropy",
    "weak_measured",
    "weak_measurement",
]
