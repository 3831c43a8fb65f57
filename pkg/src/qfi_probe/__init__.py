"""Quantum Fisher information and fidelity for one- and two-qubit probes
coupled to a photon-number cavity field, a thermal reservoir, or a squeezed
vacuum reservoir."""

from .lindblad import (
    LindbladGenerator,
    StepUnderflow,
    TwoQubitReservoirParams,
    integrate,
    squeezed_generator,
    thermal_generator,
    trajectory,
    two_qubit_generator,
)
from .probe_models import (
    ChannelModel,
    FockParams,
    SqueezedParams,
    ThermalParams,
    TwoQubitFockParams,
    fock1_channel,
    fock1_state,
    fock2_channel,
    fock2_state,
    reduce_A,
    squeezed1_channel,
    squeezed1_state,
    thermal1_channel,
    thermal1_state,
)
from .qfi_engine import (
    CramerRaoInput,
    QfiResult,
    cramer_rao,
    d_rho,
    fd_step,
    occupation_from_temperature,
    occupation_slope,
    qfi_pure_oracle,
    qfi_sld_oracle,
    qfi_spectral,
    qfi_temperature,
    temperature_from_occupation,
)
from .qstate import (
    BlochVector,
    ConvergenceFailure,
    DensityMatrix,
    NegativeEigenvalue,
    NotHermitian,
    StateValidationError,
    TraceNotOne,
    bloch_vector,
    eig_hermitian,
    fidelity_bloch,
    fidelity_uhlmann_oracle,
    partial_trace_B,
    validate_density,
)
from .scan_repro import (
    ScanConfig,
    ScanDataset,
    backflow_intervals,
    discrepancy_report,
    find_max,
    reproduce_figure,
    scan,
)

__all__ = [
    "BlochVector",
    "ChannelModel",
    "ConvergenceFailure",
    "CramerRaoInput",
    "DensityMatrix",
    "FockParams",
    "LindbladGenerator",
    "NegativeEigenvalue",
    "NotHermitian",
    "QfiResult",
    "ScanConfig",
    "ScanDataset",
    "SqueezedParams",
    "StateValidationError",
    "StepUnderflow",
    "ThermalParams",
    "TraceNotOne",
    "TwoQubitFockParams",
    "TwoQubitReservoirParams",
    "backflow_intervals",
    "bloch_vector",
    "cramer_rao",
    "d_rho",
    "discrepancy_report",
    "eig_hermitian",
    "fd_step",
    "fidelity_bloch",
    "fidelity_uhlmann_oracle",
    "find_max",
    "fock1_channel",
    "fock1_state",
    "fock2_channel",
    "fock2_state",
    "integrate",
    "occupation_from_temperature",
    "occupation_slope",
    "partial_trace_B",
    "qfi_pure_oracle",
    "qfi_sld_oracle",
    "qfi_spectral",
    "qfi_temperature",
    "reduce_A",
    "reproduce_figure",
    "scan",
    "squeezed1_channel",
    "squeezed1_state",
    "squeezed_generator",
    "temperature_from_occupation",
    "thermal1_channel",
    "thermal1_state",
    "thermal_generator",
    "trajectory",
    "two_qubit_generator",
    "validate_density",
]
