"""Constructors for the initial-state families and the collective basis.

Basis ordering is fixed throughout: |1> = |g1 g2>, |2> = |g1 e2>,
|3> = |e1 g2>, |4> = |e1 e2>. The collective (Dicke) ordering is
{|g>, |s>, |a>, |e>} with |s>, |a> the symmetric / antisymmetric
one-excitation states.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterOutOfRange, WrongBasisTag
from .qcore import COLLECTIVE, COMPUTATIONAL, DensityMatrix4, validate_density

_SQ2 = 1.0 / np.sqrt(2.0)

# Rows are the collective kets expressed over the computational kets.
BASIS_TRANSFORM = np.array(
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, _SQ2, _SQ2, 0.0],
        [0.0, -_SQ2, _SQ2, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ],
    dtype=complex,
)

BELL_LABELS = ("phi_plus", "phi_minus", "psi_plus", "psi_minus")


def bell_ket(which="phi_plus") -> np.ndarray:
    """One of the four Bell states as a computational-basis ket."""
    kets = {
        "phi_plus": np.array([_SQ2, 0.0, 0.0, _SQ2]),
        "phi_minus": np.array([_SQ2, 0.0, 0.0, -_SQ2]),
        "psi_plus": np.array([0.0, _SQ2, _SQ2, 0.0]),
        "psi_minus": np.array([0.0, _SQ2, -_SQ2, 0.0]),
    }
    if isinstance(which, int):
        which = BELL_LABELS[which]
    if which not in kets:
        raise ParameterOutOfRange(f"unknown Bell state {which!r}")
    return kets[which].astype(complex)


def werner(p: float, bell="phi_plus") -> DensityMatrix4:
    """Convex mix of the maximally mixed state with a Bell projector."""
    if not 0.0 <= p <= 1.0:
        raise ParameterOutOfRange(f"Werner parameter p = {p} outside [0, 1]")
    ket = bell_ket(bell)
    m = (1.0 - p) / 4.0 * np.eye(4, dtype=complex) + p * np.outer(ket, ket.conj())
    return validate_density(m)


def _check_coherence(x: float) -> None:
    if not 0.0 < x <= 1.0:
        raise ParameterOutOfRange(f"coherence x = {x} outside (0, 1]")


def mnms_two_photon(x: float) -> DensityMatrix4:
    """MNMS with ground/double-excitation coherence x/2."""
    _check_coherence(x)
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[3, 3] = 0.5
    m[0, 3] = m[3, 0] = x / 2.0
    return validate_density(m)


def mnms_one_photon(x: float) -> DensityMatrix4:
    """MNMS with coherence x/2 between the two one-excitation kets."""
    _check_coherence(x)
    m = np.zeros((4, 4), dtype=complex)
    m[1, 1] = m[2, 2] = 0.5
    m[1, 2] = m[2, 1] = x / 2.0
    return validate_density(m)


def mems_mixing_weight(x: float) -> float:
    """Corner population g(x): 1/3 below x = 2/3, x/2 above."""
    return 1.0 / 3.0 if x < 2.0 / 3.0 else x / 2.0


def mems_two_photon(x: float) -> DensityMatrix4:
    """MEMS with two-photon coherence x/2 and branch weight g(x)."""
    _check_coherence(x)
    g = mems_mixing_weight(x)
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[3, 3] = g
    m[1, 1] = 1.0 - 2.0 * g
    m[0, 3] = m[3, 0] = x / 2.0
    return validate_density(m)


def mems_one_photon(x: float) -> DensityMatrix4:
    """MEMS with one-photon coherence x/2 and branch weight g(x)."""
    _check_coherence(x)
    g = mems_mixing_weight(x)
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = 1.0 - 2.0 * g
    m[1, 1] = m[2, 2] = g
    m[1, 2] = m[2, 1] = x / 2.0
    return validate_density(m)


FAMILIES = {
    "werner": werner,
    "mnms2": mnms_two_photon,
    "mnms1": mnms_one_photon,
    "mems2": mems_two_photon,
    "mems1": mems_one_photon,
}


def make_state(family: str, parameter: float) -> DensityMatrix4:
    if family not in FAMILIES:
        raise ParameterOutOfRange(
            f"unknown family {family!r}; expected one of {sorted(FAMILIES)}"
        )
    return FAMILIES[family](parameter)


def to_collective(rho: DensityMatrix4) -> DensityMatrix4:
    """Rotate a computational-basis state into the collective basis."""
    if rho.basis != COMPUTATIONAL:
        raise WrongBasisTag(f"expected computational basis, got {rho.basis}")
    u = BASIS_TRANSFORM
    return DensityMatrix4(u @ rho.matrix @ u.conj().T, COLLECTIVE)


def from_collective(rho: DensityMatrix4) -> DensityMatrix4:
    """Rotate a collective-basis state back to the computational basis."""
    if rho.basis != COLLECTIVE:
        raise WrongBasisTag(f"expected collective basis, got {rho.basis}")
    u = BASIS_TRANSFORM
    return DensityMatrix4(u.conj().T @ rho.matrix @ u, COMPUTATIONAL)
