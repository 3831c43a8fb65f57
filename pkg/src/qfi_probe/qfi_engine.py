"""Quantum Fisher information: parameter derivatives, the spectral formula,
independent oracles, the temperature chain rule, and the Cramer-Rao bound."""

from __future__ import annotations

from dataclasses import dataclass
from math import log1p

import numpy as np

from .probe_models import ChannelModel
from .qstate import eig_hermitian

EIGENSUM_FLOOR = 1e-12
_FD_SCALE = float(np.cbrt(np.finfo(float).eps))


@dataclass(frozen=True)
class QfiResult:
    """QFI value with diagnostics.

    Attributes:
        value: the Fisher information, >= 0, in 1/estimand^2 units.
        discarded_pairs: eigenvalue pairs excluded because p_i + p_j fell
            at or below the 1e-12 floor.
        derivative_step: finite-difference step used to build the
            derivative, NaN when not applicable.
    """

    value: float
    discarded_pairs: int
    derivative_step: float = float("nan")


@dataclass(frozen=True)
class CramerRaoInput:
    """QFI plus the number of repeated experiments."""

    qfi: float
    experiments: int = 1

    def __post_init__(self):
        if self.qfi <= 0.0:
            raise ValueError("qfi must be positive")
        if self.experiments < 1:
            raise ValueError("experiment count must be at least 1")


def fd_step(value: float) -> float:
    """Central-difference step cbrt(machine epsilon) * max(1, |value|)."""
    return _FD_SCALE * max(1.0, abs(value))


def _unit_trace(mat: np.ndarray) -> np.ndarray:
    # Dividing out the trace keeps the differenced result traceless even
    # when the states carry integrator dust on their traces.
    return mat / mat.trace().real


def _hermitize(mat: np.ndarray) -> np.ndarray:
    return 0.5 * (mat + mat.conj().T)


def d_rho(model: ChannelModel, value: float, t: float) -> np.ndarray:
    """Derivative of the model state with respect to the estimand.

    Central second-order stencil with step fd_step(value); falls back to
    the one-sided second-order stencil when value - step would cross the
    model's domain floor. The result is symmetrized and traceless to 1e-9.
    """
    h = fd_step(value)

    def at(v: float) -> np.ndarray:
        return _unit_trace(np.asarray(model.state(v, t), dtype=complex))

    if model.floor is not None and value - h < model.floor:
        diff = (-3.0 * at(value) + 4.0 * at(value + h) - at(value + 2.0 * h)) / (2.0 * h)
    else:
        diff = (at(value + h) - at(value - h)) / (2.0 * h)
    return _hermitize(diff)


def d_rho_grid(model: ChannelModel, value: float, times) -> np.ndarray:
    """Vectorized d_rho over a time grid, reusing batched state evaluation."""
    times = np.asarray(times, dtype=float)
    h = fd_step(value)

    def at(v: float) -> np.ndarray:
        states = np.asarray(model.states_over(v, times), dtype=complex)
        traces = np.einsum("kii->k", states).real
        return states / traces[:, None, None]

    if model.floor is not None and value - h < model.floor:
        diff = (-3.0 * at(value) + 4.0 * at(value + h) - at(value + 2.0 * h)) / (2.0 * h)
    else:
        diff = (at(value + h) - at(value - h)) / (2.0 * h)
    return 0.5 * (diff + diff.conj().transpose(0, 2, 1))


def d_rho_analytic(model: ChannelModel, value: float, t: float) -> np.ndarray:
    """Analytic derivative where the model provides one (the reservoir
    solutions are elementary in their parameters); must agree with the
    stencil to 1e-6."""
    return model.analytic_derivative(value, t)


def qfi_spectral(rho, drho: np.ndarray, derivative_step: float = float("nan")) -> QfiResult:
    """QFI from the spectral decomposition of rho.

    Computed in the matrix-element form
    F = sum_{i,j} 2 |<psi_i| drho |psi_j>|^2 / (p_i + p_j)
    over pairs with p_i + p_j > 1e-12; diagonal terms reproduce the
    classical sum (dp_i)^2 / p_i and off-diagonal terms the eigenvector
    contribution, without differentiating eigenvectors. Discarded pairs
    are counted in the result.
    """
    values, vectors = eig_hermitian(rho)
    drho = np.asarray(drho, dtype=complex)
    if drho.shape != (values.size, values.size):
        raise ValueError(
            f"drho shape {drho.shape} does not match state dimension {values.size}"
        )
    elements = vectors.conj().T @ drho @ vectors
    pair_sums = values[:, None] + values[None, :]
    supported = pair_sums > EIGENSUM_FLOOR
    weights = 2.0 * np.abs(elements) ** 2 / np.where(supported, pair_sums, 1.0)
    value = float(weights[supported].sum())
    return QfiResult(
        value=max(value, 0.0),
        discarded_pairs=int(np.count_nonzero(~supported)),
        derivative_step=derivative_step,
    )


def qfi_sld_oracle(rho, drho: np.ndarray) -> float:
    """QFI via the symmetric logarithmic derivative.

    Solves drho = (L rho + rho L) / 2 in the eigenbasis of rho
    (L_ij = 2 drho_ij / (p_i + p_j) on the supported subspace), rebuilds L
    in the original basis and returns tr(rho L^2). Independent code path
    from qfi_spectral; the two agree to 1e-8 whenever nothing is discarded.
    """
    values, vectors = eig_hermitian(rho)
    drho = np.asarray(drho, dtype=complex)
    elements = vectors.conj().T @ drho @ vectors
    pair_sums = values[:, None] + values[None, :]
    supported = pair_sums > EIGENSUM_FLOOR
    sld_eigen = np.where(supported, 2.0 * elements / np.where(supported, pair_sums, 1.0), 0.0)
    sld = vectors @ sld_eigen @ vectors.conj().T
    mat = np.asarray(getattr(rho, "matrix", rho), dtype=complex)
    return float(np.trace(mat @ sld @ sld).real)


def qfi_pure_oracle(psi: np.ndarray, dpsi: np.ndarray) -> float:
    """Pure-state QFI, F = 4 (<dpsi|dpsi> - |<psi|dpsi>|^2).

    For a normalized family Re<psi|dpsi> = 0, and the value agrees with
    qfi_spectral applied to the rank-1 density matrix.
    """
    psi = np.asarray(psi, dtype=complex)
    dpsi = np.asarray(dpsi, dtype=complex)
    overlap = np.vdot(psi, dpsi)
    value = 4.0 * (np.vdot(dpsi, dpsi).real - abs(overlap) ** 2)
    return float(max(value, 0.0))


def occupation_from_temperature(temperature: float, freq_scale: float = 1.0) -> float:
    """Bose occupation 1 / (exp(freq_scale / temperature) - 1)."""
    if temperature <= 0.0:
        raise ValueError("temperature must be positive")
    return 1.0 / np.expm1(freq_scale / temperature)


def temperature_from_occupation(occupation: float, freq_scale: float = 1.0) -> float:
    """Inverse map T = freq_scale / ln(1 + 1/occupation)."""
    if occupation <= 0.0:
        raise ValueError("occupation must be positive to invert")
    return freq_scale / log1p(1.0 / occupation)


def occupation_slope(temperature: float, freq_scale: float = 1.0) -> float:
    """d(occupation)/d(temperature) at the given temperature.

    Evaluated as (freq_scale / T^2) m (m + 1), the overflow-safe form of
    (freq_scale / T^2) exp(s/T) / (exp(s/T) - 1)^2.
    """
    if temperature <= 0.0:
        raise ValueError("temperature must be positive")
    m = occupation_from_temperature(temperature, freq_scale)
    return (freq_scale / temperature**2) * m * (m + 1.0)


def qfi_temperature(
    fq_occupation: float, occupation: float, temperature: float, freq_scale: float = 1.0
) -> float:
    """Chain rule F(T) = F(m) (dm/dT)^2.

    Args:
        fq_occupation: QFI with respect to the mean occupation.
        occupation: mean occupation consistent with the temperature.
        temperature: reservoir temperature, > 0.
        freq_scale: transition-frequency scale in temperature units.
    """
    if temperature <= 0.0:
        raise ValueError("temperature must be positive")
    slope = (freq_scale / temperature**2) * occupation * (occupation + 1.0)
    return fq_occupation * slope**2


def cramer_rao(bound_input: CramerRaoInput) -> float:
    """Best attainable uncertainty 1 / sqrt(experiments * qfi)."""
    return 1.0 / np.sqrt(bound_input.experiments * bound_input.qfi)
