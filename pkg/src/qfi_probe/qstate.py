"""Density-matrix primitives for one- and two-qubit probe states.

Basis conventions used throughout the package:

* one qubit: (|e>, |g>), excited state first;
* two qubits: (|e_A e_B>, |e_A g_B>, |g_A e_B>, |g_A g_B>), qubit A major;
* Bloch components: az = rho_ee - rho_gg, ax = 2 Re(rho_eg),
  ay = -2 Im(rho_eg).

All operations are pure functions and all returned values are immutable,
so they are safe to share between concurrent workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


class StateValidationError(ValueError):
    """A candidate density matrix violates one of the state invariants."""


class NotHermitian(StateValidationError):
    pass


class TraceNotOne(StateValidationError):
    pass


class NegativeEigenvalue(StateValidationError):
    pass


class ConvergenceFailure(RuntimeError):
    """The eigensolver exceeded its accuracy budget."""


def _as_matrix(state) -> np.ndarray:
    """Accept either a DensityMatrix or a plain complex array."""
    return np.asarray(getattr(state, "matrix", state), dtype=complex)


@dataclass(frozen=True)
class DensityMatrix:
    """A validated probe state.

    Attributes:
        matrix: read-only complex square matrix (dimension 2 or 4).
        eigenvalues: spectrum in descending order, clamped to [0, 1]
            after the positivity check (diagnostic only; the matrix
            itself is stored as given).
    """

    matrix: np.ndarray
    eigenvalues: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


class BlochVector(NamedTuple):
    """Real Bloch components of a qubit state, |a| <= 1."""

    ax: float
    ay: float
    az: float

    def dot(self, other: "BlochVector") -> float:
        return self.ax * other.ax + self.ay * other.ay + self.az * other.az

    def norm_sq(self) -> float:
        return self.dot(self)


def validate_density(matrix, psd_tol: float = PSD_TOL) -> DensityMatrix:
    """Check the three state invariants and wrap the matrix.

    Args:
        matrix: complex square matrix of dimension 2 or 4.
        psd_tol: eigenvalues are accepted down to ``-psd_tol``; the
            master-equation integrator relaxes this to 1e-8 to absorb
            integration dust.

    Returns:
        The validated DensityMatrix, with eigenvalues reported clamped
        to [0, 1].

    Raises:
        NotHermitian, TraceNotOne, NegativeEigenvalue: naming the bound
            and the worst offending magnitude.
        ValueError: for a non-square input or an unsupported dimension.
    """
    mat = _as_matrix(matrix)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    if mat.shape[0] not in (2, 4):
        raise ValueError(f"unsupported dimension {mat.shape[0]}, expected 2 or 4")
    herm_dev = float(np.abs(mat - mat.conj().T).max())
    if herm_dev > HERMITICITY_TOL:
        raise NotHermitian(
            f"max |rho_ij - conj(rho_ji)| = {herm_dev:.3e} exceeds {HERMITICITY_TOL:.0e}"
        )
    trace_dev = abs(complex(mat.trace()) - 1.0)
    if trace_dev > TRACE_TOL:
        raise TraceNotOne(f"|tr(rho) - 1| = {trace_dev:.3e} exceeds {TRACE_TOL:.0e}")
    eigs = np.linalg.eigvalsh(mat)
    smallest = float(eigs.min())
    if smallest < -psd_tol:
        raise NegativeEigenvalue(
            f"smallest eigenvalue {smallest:.3e} below -{psd_tol:.0e}"
        )
    spectrum = np.clip(eigs, 0.0, 1.0)[::-1].copy()
    mat = mat.copy()
    mat.flags.writeable = False
    spectrum.flags.writeable = False
    return DensityMatrix(matrix=mat, eigenvalues=spectrum)


def eig_hermitian(state) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a density matrix.

    Returns:
        (eigenvalues, eigenvectors): eigenvalues in descending order and
        the matching orthonormal eigenvectors as matrix columns, with
        ``rho = sum_i p_i |psi_i><psi_i|`` reconstructed to 1e-10.

    Raises:
        ConvergenceFailure: if the solver fails or the reconstruction
            error exceeds 1e-10.
    """
    mat = _as_matrix(state)
    try:
        values, vectors = np.linalg.eigh(mat)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigensolver failed: {exc}") from exc
    values = values[::-1].copy()
    vectors = vectors[:, ::-1].copy()
    reconstruction = (vectors * values) @ vectors.conj().T
    err = float(np.abs(reconstruction - mat).max())
    if err > 1e-10:
        raise ConvergenceFailure(f"reconstruction error {err:.3e} exceeds 1e-10")
    return values, vectors


def partial_trace_B(state) -> DensityMatrix:
    """Reduced state of qubit A after tracing out qubit B.

    With the A-major basis order, rho^A_ee = rho_11 + rho_22,
    rho^A_gg = rho_33 + rho_44 and rho^A_eg = rho_13 + rho_24.
    """
    mat = _as_matrix(state)
    if mat.shape != (4, 4):
        raise ValueError(f"partial trace expects a 4x4 matrix, got shape {mat.shape}")
    reduced = np.trace(mat.reshape(2, 2, 2, 2), axis1=1, axis2=3)
    return validate_density(reduced)


def bloch_vector(state) -> BlochVector:
    """Bloch components of a qubit state under the package convention."""
    mat = _as_matrix(state)
    if mat.shape != (2, 2):
        raise ValueError(f"Bloch vector expects a 2x2 matrix, got shape {mat.shape}")
    vec = BlochVector(
        ax=float(2.0 * mat[0, 1].real),
        ay=float(-2.0 * mat[0, 1].imag),
        az=float((mat[0, 0] - mat[1, 1]).real),
    )
    if vec.norm_sq() > 1.0 + 1e-10:
        raise ValueError(f"Bloch vector norm^2 = {vec.norm_sq():.12f} exceeds 1")
    return vec


def fidelity_bloch(state0, state1) -> float:
    """Fidelity of two qubit states from their Bloch vectors.

    f = (1 + a0.a1 + sqrt((1 - a0.a0)(1 - a1.a1))) / 2. The radicand is
    clamped at zero when floating-point dust pushes it within -1e-12.
    """
    a0 = bloch_vector(state0)
    a1 = bloch_vector(state1)
    radicand = (1.0 - a0.norm_sq()) * (1.0 - a1.norm_sq())
    if radicand < 0.0:
        if radicand < -1e-12:
            raise ValueError(f"radicand {radicand:.3e} below -1e-12; inputs invalid")
        radicand = 0.0
    value = 0.5 * (1.0 + a0.dot(a1) + np.sqrt(radicand))
    return float(min(max(value, 0.0), 1.0))


def fidelity_uhlmann_oracle(state0, state1) -> float:
    """Qubit fidelity via tr(rho0 rho1) + 2 sqrt(det rho0 det rho1).

    Independent of the Bloch-vector route; the two must agree to 1e-10
    on every valid qubit pair.
    """
    m0 = _as_matrix(state0)
    m1 = _as_matrix(state1)
    if m0.shape != (2, 2) or m1.shape != (2, 2):
        raise ValueError("Uhlmann oracle expects two 2x2 matrices")
    overlap = float(np.trace(m0 @ m1).real)
    dets = []
    for mat in (m0, m1):
        det = float(np.linalg.det(mat).real)
        if det < 0.0:
            if det < -1e-12:
                raise ValueError(f"determinant {det:.3e} below -1e-12; input invalid")
            det = 0.0
        dets.append(det)
    value = overlap + 2.0 * np.sqrt(dets[0] * dets[1])
    return float(min(max(value, 0.0), 1.0))


def density_from_bloch(vec: BlochVector) -> np.ndarray:
    """Inverse of bloch_vector: (identity + a.sigma) / 2."""
    return 0.5 * (
        np.eye(2, dtype=complex)
        + vec.ax * PAULI_X
        + vec.ay * PAULI_Y
        + vec.az * PAULI_Z
    )
