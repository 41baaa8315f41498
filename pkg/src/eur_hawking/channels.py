"""Kraus channels: depolarizing, phase damping, Pauli x/z mixing, weak measurement."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, PostSelectionError, StructuralError
from .linalg import ID2, SIGMA_X, SIGMA_Y, SIGMA_Z, as_matrix, dagger

KRAUS_ATOL = 1e-12
MIN_SUCCESS_PROBABILITY = 1e-14


@dataclass(frozen=True)
class KrausChannel:
    """Ordered Kraus operators; non-trace-preserving maps need renormalisation."""

    operators: tuple[np.ndarray, ...]
    trace_preserving: bool = True
    name: str = ""

    def validate(self) -> "KrausChannel":
        if not self.operators:
            raise StructuralError("channel needs at least one Kraus operator")
        total = np.zeros_like(as_matrix(self.operators[0]))
        for op in self.operators:
            op = as_matrix(op, "Kraus operator")
            total = total + dagger(op) @ op
        identity = np.eye(total.shape[0], dtype=complex)
        if self.trace_preserving:
            if np.abs(total - identity).max() > KRAUS_ATOL:
                raise StructuralError(f"channel {self.name or ''} is not trace preserving")
        else:
            if np.linalg.eigvalsh(total - identity).max() > KRAUS_ATOL:
                raise StructuralError(
                    f"channel {self.name or ''} exceeds the completeness bound sum K^dag K <= I"
                )
        return self


def _check_strength(value: float, label: str) -> float:
    if not (math.isfinite(value) and 0.0 <= value <= 1.0):
        raise DomainError(f"{label} must lie in [0, 1], got {value}")
    return float(value)


@dataclass(frozen=True)
class NoiseParams:
    """Noise strength, optionally derived from a decay exponent.

    strength = 1 - exp(-decay_exponent) when the exponent is given
    (p = 1 - e^{-delta t} for depolarizing, q = 1 - e^{-Gamma t} for
    phase damping).
    """

    strength: float
    decay_exponent: Optional[float] = None

    @classmethod
    def from_decay_exponent(cls, exponent: float) -> "NoiseParams":
        if not (math.isfinite(exponent) and exponent >= 0):
            raise DomainError(f"decay exponent must be non-negative, got {exponent}")
        return cls(strength=-math.expm1(-exponent), decay_exponent=exponent)

    def validate(self) -> "NoiseParams":
        _check_strength(self.strength, "strength")
        if self.decay_exponent is not None:
            expected = -math.expm1(-self.decay_exponent)
            if abs(self.strength - expected) > 1e-12:
                raise DomainError(
                    f"strength {self.strength} inconsistent with decay exponent "
                    f"{self.decay_exponent} (expected {expected})"
                )
        return self


def depolarizing_channel(p: float) -> KrausChannel:
    """{sqrt(1-p) I, sqrt(p/3) sigma_x, sqrt(p/3) sigma_y, sqrt(p/3) sigma_z}.

    Fully mixing at p = 3/4 in this parametrisation.
    """
    p = _check_strength(p, "p")
    ops = (
        math.sqrt(1.0 - p) * ID2,
        math.sqrt(p / 3.0) * SIGMA_X,
        math.sqrt(p / 3.0) * SIGMA_Y,
        math.sqrt(p / 3.0) * SIGMA_Z,
    )
    return KrausChannel(operators=ops, trace_preserving=True, name="depolarizing").validate()


def phase_damping_channel(q: float) -> KrausChannel:
    """{diag(1, sqrt(1-q)), diag(0, sqrt(q))}; unital, kills coherences at q = 1."""
    q = _check_strength(q, "q")
    ops = (
        np.diag([1.0, math.sqrt(1.0 - q)]).astype(complex),
        np.diag([0.0, math.sqrt(q)]).astype(complex),
    )
    return KrausChannel(operators=ops, trace_preserving=True, name="phase_damping").validate()


def pauli_xz_channel(p: float) -> KrausChannel:
    """{sqrt(1-2p/3) I, sqrt(p/3) sigma_x, sqrt(p/3) sigma_z}.

    Pauli mixing with equal x and z flip weight p/3 and no y component. This
    is the noise action that generates the depolarizing-scenario states when
    applied to the exterior Region-I mode (see scenarios module).
    """
    p = _check_strength(p, "p")
    ops = (
        math.sqrt(1.0 - 2.0 * p / 3.0) * ID2,
        math.sqrt(p / 3.0) * SIGMA_X,
        math.sqrt(p / 3.0) * SIGMA_Z,
    )
    return KrausChannel(operators=ops, trace_preserving=True, name="pauli_xz").validate()


def weak_measurement(gamma: float) -> KrausChannel:
    """Single operator diag(1, sqrt(1-gamma)); non-trace-preserving uncollapsing map.

    gamma = 0 is the identity and is flagged trace preserving so that the
    success probability is exactly 1 there.
    """
    gamma = _check_strength(gamma, "gamma")
    op = np.diag([1.0, math.sqrt(1.0 - gamma)]).astype(complex)
    return KrausChannel(
        operators=(op,), trace_preserving=(gamma == 0.0), name="weak_measurement"
    ).validate()


def apply_on_subsystem(
    rho, dims: Sequence[int], index: int, channel: KrausChannel
) -> tuple[np.ndarray, float]:
    """Apply the channel to one tensor factor; return (state, success probability).

    Trace-preserving channels return probability 1. Otherwise the output is
    renormalised by its trace, which is returned as the post-selection
    success probability.
    """
    rho = as_matrix(rho, "rho")
    dims = [int(d) for d in dims]
    if int(np.prod(dims)) != rho.shape[0] or rho.shape[0] != rho.shape[1]:
        raise StructuralError(f"dims {dims} do not factor a {rho.shape} matrix")
    if index < 0 or index >= len(dims):
        raise StructuralError(f"subsystem index {index} out of range")

    before = int(np.prod(dims[:index])) if index > 0 else 1
    after = int(np.prod(dims[index + 1:])) if index + 1 < len(dims) else 1
    out = np.zeros_like(rho)
    for op in channel.operators:
        lifted = np.kron(np.kron(np.eye(before, dtype=complex), op), np.eye(after, dtype=complex))
        out += lifted @ rho @ dagger(lifted)
    if channel.trace_preserving:
        return out, 1.0
    p_succ = float(np.trace(out).real)
    if p_succ <= MIN_SUCCESS_PROBABILITY:
        raise PostSelectionError(
            f"post-selection probability {p_succ:.3e} is degenerate for channel "
            f"{channel.name or 'unnamed'}"
        )
    return out / p_succ, p_succ


def apply_on_a(rho, channel: KrausChannel) -> tuple[np.ndarray, float]:
    """Apply a single-qubit channel to the first factor A of a 2^n dim state."""
    rho = as_matrix(rho, "rho")
    d = rho.shape[0]
    if d % 2 != 0:
        raise StructuralError(f"state dimension {d} is not divisible by 2")
    return apply_on_subsystem(rho, (2, d // 2), 0, channel)
