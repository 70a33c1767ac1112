"""Simulation library for gain-loss balanced LC dimers with memory elements.

The package covers the memory-less theory (matrices, closed-form spectra,
exceptional-point thresholds), memristive and meminductive constitutive
laws, deterministic fixed-step integration of the coupled nonlinear
systems, phase diagnostics, and parallel phase-map sweeps.
"""

from .circuit import (
    CircuitParams,
    EnergyForm,
    PhiState,
    PTPhase,
    SpectrumResult,
    SymmetryOps,
    build_heff,
    build_kirchhoff_matrix,
    check_chiral,
    check_pt_symmetry,
    circuit_energy,
    eigenvalues_closed_form,
    gamma_c,
    gamma_pt,
    mu_pt,
    parity_matrix,
    symmetry_ops,
    time_reversal_unitary,
)
from .elements import (
    Meminductor,
    Memristor,
    clamp_state,
    gamma_of_x,
    meminductance,
    meminductor_rate,
    memristance,
    memristor_rate,
    window,
)
from .dynamics import (
    IntegrationDiverged,
    Meminductive,
    Memristive,
    Static,
    SystemVariant,
    Trajectory,
    build_hbar_eff,
    derivative_meminductive,
    derivative_memristive,
    derivative_static,
    integrate,
    integrate_psi,
    write_trajectory_csv,
)
from .diagnostics import (
    InitialStateKind,
    InsufficientDataError,
    PhaseKind,
    PhaseLabel,
    ResonanceTable,
    amplification_factor,
    average_gamma,
    classify_phase,
    floquet_resonant_couplings,
    make_initial_state,
)
from .config import (
    ConfigError,
    RuntimeSetup,
    ScenarioConfig,
    build_runtime,
    config_hash,
    effective_config_text,
    load_scenario,
    parse_scenario,
)
from .sweep import (
    Axis,
    SchemaError,
    SweepResult,
    SweepSpec,
    parse_axis,
    read_sweep,
    run_sweep,
    write_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "Axis",
    "CircuitParams",
    "ConfigError",
    "EnergyForm",
    "InitialStateKind",
    "InsufficientDataError",
    "IntegrationDiverged",
    "Meminductive",
    "Meminductor",
    "Memristive",
    "Memristor",
    "PTPhase",
    "PhaseKind",
    "PhaseLabel",
    "PhiState",
    "ResonanceTable",
    "RuntimeSetup",
    "ScenarioConfig",
    "SchemaError",
    "SpectrumResult",
    "Static",
    "SweepResult",
    "SweepSpec",
    "SymmetryOps",
    "SystemVariant",
    "Trajectory",
    "amplification_factor",
    "average_gamma",
    "build_hbar_eff",
    "build_heff",
    "build_kirchhoff_matrix",
    "build_runtime",
    "check_chiral",
    "check_pt_symmetry",
    "circuit_energy",
    "clamp_state",
    "classify_phase",
    "config_hash",
    "derivative_meminductive",
    "derivative_memristive",
    "derivative_static",
    "effective_config_text",
    "eigenvalues_closed_form",
    "floquet_resonant_couplings",
    "gamma_c",
    "gamma_of_x",
    "gamma_pt",
    "integrate",
    "integrate_psi",
    "load_scenario",
    "make_initial_state",
    "meminductance",
    "meminductor_rate",
    "memristance",
    "memristor_rate",
    "mu_pt",
    "parity_matrix",
    "parse_axis",
    "parse_scenario",
    "read_sweep",
    "run_sweep",
    "symmetry_ops",
    "time_reversal_unitary",
    "window",
    "write_sweep",
    "write_trajectory_csv",
]
