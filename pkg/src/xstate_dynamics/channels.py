"""Kraus-operator noise channels acting locally on each qubit.

Phase damping, amplitude damping, and random telegraph noise, all as
time-parameterized maps applied to the initial state (not composed in
steps). Single-qubit operators use the fixed (g, e) ordering; amplitude
damping always moves excited population down to the ground level.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import DeltaOutOfRange, ParameterOutOfRange
from .qcore import DensityMatrix4, validate_density

PHASE_DAMPING = "phase_damping"
AMPLITUDE_DAMPING = "amplitude_damping"
RTN = "rtn"

COMPLETENESS_TOL = 1e-12


@dataclass(frozen=True)
class KrausSet:
    """Operator-sum representation of a channel at a fixed time."""

    operators: tuple
    dim: int
    label: str


@dataclass(frozen=True)
class ChannelParams:
    kind: str
    rate: float
    coupling_b: float = 0.0

    def __post_init__(self):
        if self.kind not in (PHASE_DAMPING, AMPLITUDE_DAMPING, RTN):
            raise ParameterOutOfRange(f"unknown channel kind {self.kind!r}")
        if self.rate <= 0.0:
            raise ParameterOutOfRange(f"channel rate {self.rate} must be positive")
        if self.kind == RTN and self.coupling_b < 0.0:
            raise ParameterOutOfRange(f"coupling b = {self.coupling_b} must be >= 0")

    @property
    def markovian(self) -> bool:
        """RTN regime flag: Markovian iff (2b)^2 <= rate^2."""
        return (2.0 * self.coupling_b) ** 2 <= self.rate**2


def _decay_pair(rate: float, t: float) -> tuple[float, float]:
    gamma = np.exp(-0.5 * rate * t)
    omega = np.sqrt(max(0.0, 1.0 - gamma * gamma))
    return gamma, omega


def kraus_phase_damping(rate: float, t: float) -> KrausSet:
    """Pure dephasing: populations untouched, e-level phase dies out."""
    gamma, omega = _decay_pair(rate, t)
    e0 = np.diag([1.0, gamma]).astype(complex)
    e1 = np.diag([0.0, omega]).astype(complex)
    return KrausSet((e0, e1), 2, f"phase_damping(rate={rate:g}, t={t:g})")


def kraus_amplitude_damping(rate: float, t: float) -> KrausSet:
    """Energy dissipation: excited amplitude decays into the ground level."""
    gamma, omega = _decay_pair(rate, t)
    e0 = np.diag([1.0, gamma]).astype(complex)
    e1 = np.zeros((2, 2), dtype=complex)
    e1[0, 1] = omega
    return KrausSet((e0, e1), 2, f"amplitude_damping(rate={rate:g}, t={t:g})")


def rtn_delta(b: float, gamma_rtn: float, t: float) -> float:
    """Random-telegraph-noise memory kernel Delta(t).

    Trigonometric in the non-Markovian regime (2b > gamma_rtn),
    hyperbolic in the Markovian regime, polynomial limit at the border.
    """
    if gamma_rtn <= 0.0:
        raise ParameterOutOfRange(f"gamma_rtn = {gamma_rtn} must be positive")
    if t < 0.0:
        raise ParameterOutOfRange(f"t = {t} must be non-negative")
    ratio2 = (2.0 * b / gamma_rtn) ** 2
    u = gamma_rtn * t
    if abs(ratio2 - 1.0) < 1e-10:
        return float(np.exp(-u) * (1.0 + u))
    if ratio2 > 1.0:
        mu = np.sqrt(ratio2 - 1.0)
        return float(np.exp(-u) * (np.cos(u * mu) + np.sin(u * mu) / mu))
    mu = np.sqrt(1.0 - ratio2)
    return float(np.exp(-u) * (np.cosh(u * mu) + np.sinh(u * mu) / mu))


def kraus_rtn(b: float, gamma_rtn: float, t: float) -> KrausSet:
    """RTN dephasing: identity and Z weighted by (1 +/- Delta)/2."""
    delta = rtn_delta(b, gamma_rtn, t)
    if abs(delta) > 1.0 + 1e-12:
        raise DeltaOutOfRange(delta)
    delta = min(1.0, max(-1.0, delta))
    e0 = np.sqrt((1.0 + delta) / 2.0) * np.eye(2, dtype=complex)
    e1 = np.sqrt((1.0 - delta) / 2.0) * np.diag([1.0, -1.0]).astype(complex)
    return KrausSet((e0, e1), 2, f"rtn(b={b:g}, gamma={gamma_rtn:g}, t={t:g})")


def lift_two_qubit(k: KrausSet) -> KrausSet:
    """All pairwise tensor products: the same channel on each qubit."""
    if k.dim != 2:
        raise ParameterOutOfRange("can only lift single-qubit Kraus sets")
    ops = tuple(np.kron(a, b) for a, b in product(k.operators, repeat=2))
    return KrausSet(ops, 4, f"lift({k.label})")


def apply_channel(rho: DensityMatrix4, k: KrausSet) -> DensityMatrix4:
    """Operator-sum action; the output is re-validated."""
    if k.dim != 4:
        raise ParameterOutOfRange("apply_channel needs a two-qubit Kraus set")
    m = rho.matrix if isinstance(rho, DensityMatrix4) else np.asarray(rho, dtype=complex)
    out = np.zeros((4, 4), dtype=complex)
    for e in k.operators:
        out += e @ m @ e.conj().T
    return validate_density(out)


@dataclass(frozen=True)
class CptpReport:
    deviation: float
    passed: bool
    label: str


def cptp_check(k: KrausSet, tol: float = COMPLETENESS_TOL) -> CptpReport:
    """Max deviation of sum(E^dag E) from the identity."""
    acc = np.zeros((k.dim, k.dim), dtype=complex)
    for e in k.operators:
        acc += e.conj().T @ e
    deviation = float(np.abs(acc - np.eye(k.dim)).max())
    return CptpReport(deviation=deviation, passed=deviation <= tol, label=k.label)


def single_qubit_kraus(params: ChannelParams, t: float) -> KrausSet:
    if params.kind == PHASE_DAMPING:
        return kraus_phase_damping(params.rate, t)
    if params.kind == AMPLITUDE_DAMPING:
        return kraus_amplitude_damping(params.rate, t)
    return kraus_rtn(params.coupling_b, params.rate, t)


def channel_state(rho0: DensityMatrix4, params: ChannelParams, t: float) -> DensityMatrix4:
    """Initial state pushed through the lifted channel at time t."""
    return apply_channel(rho0, lift_two_qubit(single_qubit_kraus(params, t)))
