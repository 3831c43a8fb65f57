"""Closed-form evolved probe states for the cavity-field and reservoir models.

Each model maps (parameters, time) to a validated density matrix. Time is
dimensionless: coupling units for the cavity models (coupling defaults to
1), decay-rate units for the reservoir models.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .qstate import DensityMatrix, partial_trace_B, validate_density

_HALF_PI = 0.5 * np.pi


def _check_alpha(alpha: float) -> None:
    if not 0.0 <= alpha <= _HALF_PI:
        raise ValueError(f"alpha = {alpha} outside [0, pi/2]")


@dataclass(frozen=True)
class FockParams:
    """One qubit exchanging a single excitation with a photon-number cavity mode.

    Attributes:
        detuning: qubit-cavity frequency difference.
        coupling: exchange rate, > 0 (sets the time unit).
        photons: cavity photon number, >= 0.
        alpha: initial-state mixing angle in radians, [0, pi/2].
    """

    detuning: float
    coupling: float = 1.0
    photons: int = 0
    alpha: float = 0.0

    def __post_init__(self):
        if self.coupling <= 0.0:
            raise ValueError("coupling must be positive")
        if self.photons < 0:
            raise ValueError("photon number must be nonnegative")
        _check_alpha(self.alpha)

    @property
    def exchange_rate(self) -> float:
        """Resonant oscillation frequency 2 * coupling * sqrt(photons + 1)."""
        return 2.0 * self.coupling * np.sqrt(self.photons + 1.0)

    @property
    def dressed_rate(self) -> float:
        """Off-resonant oscillation frequency sqrt(exchange_rate^2 + detuning^2)."""
        return float(np.hypot(self.exchange_rate, self.detuning))


@dataclass(frozen=True)
class ThermalParams:
    """One qubit immersed in a thermal reservoir.

    Attributes:
        mean_occupation: mean boson number of the reservoir, >= 0.
        gamma: qubit decay rate, > 0.
        alpha: initial-state mixing angle in radians.
        freq_scale: transition-frequency scale in temperature units; the
            occupation at temperature T is 1 / (exp(freq_scale / T) - 1).
    """

    mean_occupation: float
    gamma: float = 1.0
    alpha: float = 0.0
    freq_scale: float = 1.0

    def __post_init__(self):
        if self.mean_occupation < 0.0:
            raise ValueError("mean occupation must be nonnegative")
        if self.gamma <= 0.0:
            raise ValueError("gamma must be positive")
        if self.freq_scale <= 0.0:
            raise ValueError("freq_scale must be positive")
        _check_alpha(self.alpha)


@dataclass(frozen=True)
class SqueezedParams:
    """One qubit immersed in a squeezed vacuum reservoir (reference phase 0).

    Attributes:
        squeezing: squeezing strength r, >= 0.
        gamma: qubit decay rate, > 0.
        alpha: initial-state mixing angle in radians.
        phase: reservoir reference phase, fixed at 0.
    """

    squeezing: float
    gamma: float = 1.0
    alpha: float = 0.0
    phase: float = 0.0

    def __post_init__(self):
        if self.squeezing < 0.0:
            raise ValueError("squeezing strength must be nonnegative")
        if self.gamma <= 0.0:
            raise ValueError("gamma must be positive")
        if self.phase != 0.0:
            raise ValueError("only reference phase 0 is supported")
        _check_alpha(self.alpha)

    @property
    def occupation(self) -> float:
        """Effective reservoir occupation sinh^2(r)."""
        return float(np.sinh(self.squeezing) ** 2)

    @property
    def pair_correlation(self) -> float:
        """Two-photon correlation cosh(r) sinh(r)."""
        return float(np.cosh(self.squeezing) * np.sinh(self.squeezing))


@dataclass(frozen=True)
class TwoQubitFockParams:
    """Two qubits sharing one excitation with an empty cavity mode.

    The closed form holds for zero cavity photons and no direct
    qubit-qubit coupling; the initial qubit state is
    cos(alpha)|eg> + sin(alpha)|ge>, a Bell state at alpha = pi/4.
    """

    detuning: float
    coupling: float = 1.0
    alpha: float = _HALF_PI / 2.0
    photons: int = 0

    def __post_init__(self):
        if self.coupling <= 0.0:
            raise ValueError("coupling must be positive")
        if self.photons != 0:
            raise ValueError("the two-qubit closed form requires zero cavity photons")
        _check_alpha(self.alpha)

    @property
    def dressed_rate(self) -> float:
        """Collective oscillation frequency sqrt(8 coupling^2 + detuning^2)."""
        return float(np.sqrt(8.0 * self.coupling**2 + self.detuning**2))


def fock1_amplitudes(p: FockParams, t: float) -> tuple[complex, complex]:
    """Excited/ground amplitudes of the single-excitation sector at time t."""
    wd = p.dressed_rate
    half = 0.5 * wd * t
    c, s = np.cos(half), np.sin(half)
    ca, sa = np.cos(p.alpha), np.sin(p.alpha)
    ratio_d = p.detuning / wd
    ratio_x = p.exchange_rate / wd
    phase = np.exp(0.5j * p.detuning * t)
    b1 = phase * (ca * (c - 1j * ratio_d * s) - 1j * sa * ratio_x * s)
    b2 = np.conj(phase) * (sa * (c + 1j * ratio_d * s) - 1j * ca * ratio_x * s)
    return complex(b1), complex(b2)


def fock1_state(p: FockParams, t: float) -> DensityMatrix:
    """Reduced qubit state diag(|b1|^2, |b2|^2) after tracing the cavity."""
    b1, b2 = fock1_amplitudes(p, t)
    return validate_density(np.diag([abs(b1) ** 2, abs(b2) ** 2]).astype(complex))


def _reservoir_elements(
    occupation: float, gamma: float, coherence_rate: float, alpha: float, t: float
) -> np.ndarray:
    """Shared reservoir solution: populations relax toward
    occupation/(2 occupation + 1) at rate gamma (2 occupation + 1) while
    coherences decay at coherence_rate."""
    steady = occupation / (2.0 * occupation + 1.0)
    pop_env = np.exp(-gamma * (2.0 * occupation + 1.0) * t)
    r11 = steady + (np.cos(alpha) ** 2 - steady) * pop_env
    r12 = np.cos(alpha) * np.sin(alpha) * np.exp(-coherence_rate * t)
    return np.array([[r11, r12], [r12, 1.0 - r11]], dtype=complex)


def thermal1_state(p: ThermalParams, t: float) -> DensityMatrix:
    """Qubit state in a thermal reservoir; coherences decay at gamma (m + 1/2)."""
    m = p.mean_occupation
    rate = p.gamma * (m + 0.5)
    return validate_density(_reservoir_elements(m, p.gamma, rate, p.alpha, t))


def thermal1_doccupation(p: ThermalParams, t: float) -> np.ndarray:
    """Analytic derivative of the thermal solution w.r.t. the mean occupation."""
    m, g = p.mean_occupation, p.gamma
    width = 2.0 * m + 1.0
    steady = m / width
    d_steady = 1.0 / width**2
    pop_env = np.exp(-g * width * t)
    d11 = d_steady * (1.0 - pop_env) + (np.cos(p.alpha) ** 2 - steady) * (
        -2.0 * g * t
    ) * pop_env
    coh = np.cos(p.alpha) * np.sin(p.alpha) * np.exp(-g * (m + 0.5) * t)
    d12 = -g * t * coh
    return np.array([[d11, d12], [d12, -d11]], dtype=complex)


def squeezed1_state(p: SqueezedParams, t: float) -> DensityMatrix:
    """Qubit state in a squeezed reservoir; coherences decay at
    gamma (occupation + pair_correlation + 1/2)."""
    occ = p.occupation
    rate = p.gamma * (occ + p.pair_correlation + 0.5)
    return validate_density(_reservoir_elements(occ, p.gamma, rate, p.alpha, t))


def squeezed1_dsqueezing(p: SqueezedParams, t: float) -> np.ndarray:
    """Analytic derivative of the squeezed solution w.r.t. the squeezing strength.

    Uses d(occupation)/dr = 2 pair_correlation and
    d(pair_correlation)/dr = 2 occupation + 1.
    """
    occ, pair, g = p.occupation, p.pair_correlation, p.gamma
    d_occ = 2.0 * pair
    d_pair = 2.0 * occ + 1.0
    width = 2.0 * occ + 1.0
    steady = occ / width
    pop_env = np.exp(-g * width * t)
    d11_docc = (1.0 / width**2) * (1.0 - pop_env) + (
        np.cos(p.alpha) ** 2 - steady
    ) * (-2.0 * g * t) * pop_env
    d11 = d_occ * d11_docc
    coh = np.cos(p.alpha) * np.sin(p.alpha) * np.exp(-g * (occ + pair + 0.5) * t)
    d12 = -g * t * (d_occ + d_pair) * coh
    return np.array([[d11, d12], [d12, -d11]], dtype=complex)


def fock2_amplitudes(p: TwoQubitFockParams, t: float) -> tuple[complex, complex, complex]:
    """Amplitudes (C_eg, C_ge, C_gg) of the two-qubit single-excitation sector."""
    wd = p.dressed_rate
    half = 0.5 * wd * t
    c, s = np.cos(half), np.sin(half)
    ca, sa = np.cos(p.alpha), np.sin(p.alpha)
    symmetric = 0.5 * (ca + sa) * (c - 1j * (p.detuning / wd) * s) * np.exp(
        0.5j * p.detuning * t
    )
    antisymmetric = 0.5 * (ca - sa)
    c_eg = symmetric + antisymmetric
    c_ge = symmetric - antisymmetric
    c_gg = (
        -(ca + sa)
        * (2.0j * p.coupling / wd)
        * s
        * np.exp(-0.5j * p.detuning * t)
    )
    return complex(c_eg), complex(c_ge), complex(c_gg)


def fock2_state(p: TwoQubitFockParams, t: float) -> DensityMatrix:
    """Two-qubit state after tracing the cavity: support on |eg>, |ge>, |gg>."""
    c_eg, c_ge, c_gg = fock2_amplitudes(p, t)
    mat = np.zeros((4, 4), dtype=complex)
    mat[1, 1] = abs(c_eg) ** 2
    mat[1, 2] = c_eg * np.conj(c_ge)
    mat[2, 1] = np.conj(mat[1, 2])
    mat[2, 2] = abs(c_ge) ** 2
    mat[3, 3] = abs(c_gg) ** 2
    return validate_density(mat)


def reduce_A(state) -> DensityMatrix:
    """Reduced state of qubit A; diagonal for the block-structured two-qubit
    states this package produces."""
    mat = np.asarray(getattr(state, "matrix", state), dtype=complex)
    if mat.shape != (4, 4):
        raise ValueError(f"reduce_A expects a 4x4 matrix, got shape {mat.shape}")
    reduced = partial_trace_B(mat)
    block_structured = max(abs(mat[0, 2]), abs(mat[1, 3])) <= 5e-11
    if block_structured and abs(reduced.matrix[0, 1]) > 1e-10:
        raise AssertionError("reduced state of a block-structured input is not diagonal")
    return reduced


@dataclass(frozen=True)
class ChannelModel:
    """A named map from (estimand value, time) to a density matrix.

    Attributes:
        model_id: identifier such as "fock1" or "thermal2".
        parameter: physical parameter the estimand differentiates
            ("detuning", "mean_occupation" or "squeezing").
        value: nominal parameter value.
        floor: lower domain edge for finite differences (None if unbounded).
        dim: state dimension, 2 or 4.
        state_fn: (value, t) -> raw state matrix.
        deriv_fn: optional analytic derivative (value, t) -> matrix.
        grid_fn: optional batch evaluator (value, times) -> stacked states;
            trajectory-based models override this to integrate incrementally.
        psd_tol: positivity tolerance the model's outputs are validated at.
    """

    model_id: str
    parameter: str
    value: float
    floor: float | None
    dim: int
    state_fn: Callable[[float, float], np.ndarray]
    deriv_fn: Callable[[float, float], np.ndarray] | None = None
    grid_fn: Callable[[float, np.ndarray], np.ndarray] | None = None
    psd_tol: float = 1e-10

    def state(self, value: float, t: float) -> np.ndarray:
        return self.state_fn(value, t)

    def states_over(self, value: float, times: np.ndarray) -> np.ndarray:
        if self.grid_fn is not None:
            return self.grid_fn(value, np.asarray(times, dtype=float))
        return np.stack([self.state_fn(value, float(t)) for t in times])

    def analytic_derivative(self, value: float, t: float) -> np.ndarray:
        if self.deriv_fn is None:
            raise ValueError(f"model {self.model_id!r} has no analytic derivative")
        return self.deriv_fn(value, t)


def fock1_channel(p: FockParams) -> ChannelModel:
    """Detuning-parameterized channel for the one-qubit cavity model."""

    def state(value, t):
        return fock1_state(replace(p, detuning=value), t).matrix

    return ChannelModel("fock1", "detuning", p.detuning, None, 2, state)


def thermal1_channel(p: ThermalParams) -> ChannelModel:
    """Occupation-parameterized channel for the thermal reservoir model."""

    def state(value, t):
        return thermal1_state(replace(p, mean_occupation=value), t).matrix

    def deriv(value, t):
        return thermal1_doccupation(replace(p, mean_occupation=value), t)

    return ChannelModel(
        "thermal1", "mean_occupation", p.mean_occupation, 0.0, 2, state, deriv
    )


def squeezed1_channel(p: SqueezedParams) -> ChannelModel:
    """Squeezing-parameterized channel for the squeezed reservoir model."""

    def state(value, t):
        return squeezed1_state(replace(p, squeezing=value), t).matrix

    def deriv(value, t):
        return squeezed1_dsqueezing(replace(p, squeezing=value), t)

    return ChannelModel(
        "squeezed1", "squeezing", p.squeezing, 0.0, 2, state, deriv
    )


def fock2_channel(p: TwoQubitFockParams) -> ChannelModel:
    """Detuning-parameterized channel for the two-qubit cavity model."""

    def state(value, t):
        return fock2_state(replace(p, detuning=value), t).matrix

    return ChannelModel("fock2", "detuning", p.detuning, None, 4, state)
