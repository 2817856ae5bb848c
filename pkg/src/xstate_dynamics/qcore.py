"""4x4 complex matrix algebra, density-matrix validation and concurrence.

Everything here is sized for two qubits: eigenvalue routines are written
for 4x4 (and 2x2) matrices with deterministic, dependency-free algorithms
(cyclic Jacobi for Hermitian input, shifted QR with a characteristic-
polynomial fallback for general input).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DensityValidationError,
    NegativeEigenvalue,
    NoConvergence,
    NotHermitian,
    NotPositive,
    NotXState,
    TraceNotOne,
)

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
POSITIVITY_TOL = 1e-10
OFF_X_TOL = 1e-10
EIGENVALUE_CLAMP = 1e-9

COMPUTATIONAL = "computational"
COLLECTIVE = "collective"

# Pauli sigma_y tensor sigma_y in the fixed |gg>,|ge>,|eg>,|ee> ordering.
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
SIGMA_YY = np.kron(SIGMA_Y, SIGMA_Y)


@dataclass(frozen=True)
class DensityMatrix4:
    """Validated 4x4 density matrix tagged with its basis."""

    matrix: np.ndarray
    basis: str = COMPUTATIONAL

    @property
    def m(self) -> np.ndarray:
        return self.matrix


@dataclass(frozen=True)
class XStateView:
    """The six independent entries of an X-shaped density matrix.

    a, b, c, d are the diagonal populations (rho_11 .. rho_44); z14 and
    z23 the anti-diagonal coherences.
    """

    a: float
    b: float
    c: float
    d: float
    z14: complex
    z23: complex


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted by descending real part."""

    values: np.ndarray
    converged: bool
    iterations: int


def _as_matrix(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix4):
        return rho.matrix
    return np.asarray(rho, dtype=complex)


def validate_density(m, basis: str = COMPUTATIONAL) -> DensityMatrix4:
    """Check Hermiticity, unit trace and positivity; return a typed state.

    Raises DensityValidationError carrying one entry per violated
    invariant, each with the measured magnitude.
    """
    m = _as_matrix(m)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix contains non-finite entries")

    violations = []
    herm_dev = np.abs(m - m.conj().T).max()
    if herm_dev > HERMITICITY_TOL:
        violations.append(NotHermitian(herm_dev))
    trace_dev = abs(m.trace() - 1.0)
    if trace_dev > TRACE_TOL:
        violations.append(TraceNotOne(trace_dev))
    herm_part = 0.5 * (m + m.conj().T)
    min_eig = hermitian_eigenvalues(herm_part)[-1]
    if min_eig < -POSITIVITY_TOL:
        violations.append(NotPositive(min_eig))

    if violations:
        raise DensityValidationError(violations)
    return DensityMatrix4(m.copy(), basis)


def x_state_view(rho) -> XStateView:
    """Extract the X-shaped entries; reject matrices that are not X-form."""
    m = _as_matrix(rho)
    off_x = m.copy()
    for i, j in ((0, 0), (1, 1), (2, 2), (3, 3), (0, 3), (3, 0), (1, 2), (2, 1)):
        off_x[i, j] = 0.0
    worst = np.abs(off_x).max()
    if worst > OFF_X_TOL:
        raise NotXState(worst)
    return XStateView(
        a=m[0, 0].real,
        b=m[1, 1].real,
        c=m[2, 2].real,
        d=m[3, 3].real,
        z14=complex(m[0, 3]),
        z23=complex(m[1, 2]),
    )


def spin_flip(rho) -> np.ndarray:
    """Return (sigma_y x sigma_y) rho* (sigma_y x sigma_y)."""
    m = _as_matrix(rho)
    return SIGMA_YY @ m.conj() @ SIGMA_YY


def hermitian_eigenvalues(m, max_sweeps: int = 50) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix via cyclic complex Jacobi.

    Returns the eigenvalues in descending order. Off-diagonal Frobenius
    norm is driven below 1e-13 (relative to the matrix norm for badly
    scaled input); failure to do so within ``max_sweeps`` raises
    NoConvergence, which for 2x2/4x4 Hermitian input signals corruption.
    """
    a = _as_matrix(m).copy()
    n = a.shape[0]
    if np.abs(a - a.conj().T).max() > 1e-10 * max(1.0, np.abs(a).max()):
        raise ValueError("input is not Hermitian within tolerance")
    a = 0.5 * (a + a.conj().T)

    def _off_norm(x: np.ndarray) -> float:
        return float(np.linalg.norm(x - np.diag(np.diag(x))))

    target = 1e-13 * max(1.0, np.linalg.norm(a))
    for sweep in range(max_sweeps):
        if _off_norm(a) <= target:
            return np.sort(np.diag(a).real)[::-1]
        for p in range(n - 1):
            for q in range(p + 1, n):
                z = a[p, q]
                if abs(z) < 1e-300:
                    continue
                phase = z / abs(z)
                tau = (a[q, q].real - a[p, p].real) / (2.0 * abs(z))
                t = np.sign(tau) / (abs(tau) + np.hypot(1.0, tau)) if tau != 0 else 1.0
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                g = np.eye(n, dtype=complex)
                g[p, p] = c
                g[q, q] = c
                g[p, q] = s * phase
                g[q, p] = -s * np.conj(phase)
                a = g.conj().T @ a @ g
    if _off_norm(a) <= target:
        return np.sort(np.diag(a).real)[::-1]
    raise NoConvergence("Jacobi eigenvalue iteration", max_sweeps)


def _hessenberg(a: np.ndarray) -> np.ndarray:
    """Reduce to upper Hessenberg form with Householder reflections."""
    h = a.copy()
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1 :, k]
        nx = np.linalg.norm(x)
        if nx < 1e-300:
            continue
        v = x.copy()
        phase = x[0] / abs(x[0]) if abs(x[0]) > 0 else 1.0
        v[0] += phase * nx
        v /= np.linalg.norm(v)
        h[k + 1 :, :] -= 2.0 * np.outer(v, v.conj() @ h[k + 1 :, :])
        h[:, k + 1 :] -= 2.0 * np.outer(h[:, k + 1 :] @ v, v.conj())
    return h


def characteristic_roots(m) -> np.ndarray:
    """Eigenvalues as roots of the characteristic polynomial.

    Coefficients come from the Faddeev-LeVerrier recursion; the quartic
    (or lower) is solved through its companion matrix. Serves as the
    fallback when the QR iteration fails to converge.
    """
    a = _as_matrix(m)
    n = a.shape[0]
    coeffs = [1.0 + 0.0j]
    mk = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        mk = a @ mk
        ck = -mk.trace() / k
        coeffs.append(ck)
        mk = mk + ck * np.eye(n, dtype=complex)
    roots = np.roots(np.array(coeffs))
    return roots[np.argsort(-roots.real)]


def general_eigenvalues(m, max_iterations: int = 200) -> Spectrum:
    """Eigenvalues of a general complex matrix.

    Hessenberg reduction followed by Wilkinson-shifted QR iteration with
    subdiagonal deflation. Raises NoConvergence after ``max_iterations``
    total QR steps; callers should then fall back on
    ``characteristic_roots``.
    """
    a = _as_matrix(m)
    n = a.shape[0]
    h = _hessenberg(a)
    eigs: list[complex] = []
    iterations = 0
    hi = n
    while hi > 0:
        if hi == 1:
            eigs.append(h[0, 0])
            hi = 0
            continue
        # deflate converged subdiagonals
        deflated = False
        for k in range(hi - 1, 0, -1):
            if abs(h[k, k - 1]) <= 1e-13 * (abs(h[k - 1, k - 1]) + abs(h[k, k])):
                h[k, k - 1] = 0.0
                if k == hi - 1:
                    eigs.append(h[hi - 1, hi - 1])
                    hi -= 1
                    deflated = True
                break
        if deflated:
            continue
        if iterations >= max_iterations:
            raise NoConvergence("QR eigenvalue iteration", iterations)
        # Wilkinson shift from the trailing 2x2 block
        block = h[hi - 2 : hi, hi - 2 : hi]
        tr = block[0, 0] + block[1, 1]
        det = block[0, 0] * block[1, 1] - block[0, 1] * block[1, 0]
        disc = np.sqrt(tr * tr / 4.0 - det + 0.0j)
        mu1 = tr / 2.0 + disc
        mu2 = tr / 2.0 - disc
        mu = mu1 if abs(mu1 - block[1, 1]) <= abs(mu2 - block[1, 1]) else mu2
        active = h[:hi, :hi]
        q, r = np.linalg.qr(active - mu * np.eye(hi))
        h[:hi, :hi] = r @ q + mu * np.eye(hi)
        iterations += 1
    values = np.array(eigs)
    values = values[np.argsort(-values.real)]
    return Spectrum(values=values, converged=True, iterations=iterations)


def _spin_flip_spectrum(rho) -> np.ndarray:
    """Real, clamped eigenvalues of rho * rho-tilde, descending."""
    m = _as_matrix(rho)
    product = m @ spin_flip(m)
    try:
        values = general_eigenvalues(product).values
    except NoConvergence:
        values = characteristic_roots(product)
    lam = values.real.copy()
    if lam.min() < -EIGENVALUE_CLAMP:
        raise NegativeEigenvalue(lam.min())
    lam[lam < 0.0] = 0.0
    return np.sort(lam)[::-1]


def concurrence_wootters(rho) -> float:
    """Wootters concurrence from the spin-flip spectrum."""
    lam = _spin_flip_spectrum(rho)
    sq = np.sqrt(lam)
    return max(0.0, sq[0] - sq[1] - sq[2] - sq[3])


def concurrence_xstate(view: XStateView) -> float:
    """Closed-form concurrence for an X-shaped state.

    C = max{0, 2(|z14| - sqrt(b c)), 2(|z23| - sqrt(a d))}; tiny negative
    radicands from float noise are clamped to zero.
    """

    def _root(product: float) -> float:
        if product < 0.0:
            if product < -1e-12:
                raise NegativeEigenvalue(product)
            return 0.0
        return float(np.sqrt(product))

    c1 = 2.0 * (abs(view.z14) - _root(view.b * view.c))
    c2 = 2.0 * (abs(view.z23) - _root(view.a * view.d))
    return max(0.0, c1, c2)


def concurrence(rho) -> float:
    """Concurrence of a two-qubit state in the computational basis.

    Uses the X-state closed form when the state is X-shaped, otherwise
    the full Wootters spectrum route.
    """
    try:
        return concurrence_xstate(x_state_view(rho))
    except NotXState:
        return concurrence_wootters(rho)
