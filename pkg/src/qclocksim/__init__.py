"""Simulation toolkit for composite quantum particles with gravitating
internal energy.

The model: a particle's internal energy contributes to its inertial and
gravitational mass, so each internal level n moves with its own mass
M_n = 1 + eps_n (natural units, rest mass 1).  That single assumption
couples internal clocks to motion and makes proper time a quantum operator
whose dilation can differ branch by branch.  This package simulates the
consequences: closed twin-paradox boost sequences, nonclassical time
dilation factors, frame-dependent entanglement, accelerated frames as
boost-evolution products, pointer-clock degradation, and motional clock
shifts in trapped ions.
"""

from .config import RunConfig, ScenarioSpec, Sweep, load_config, parse_config
from .errors import (
    ConfigError,
    ConsistencyError,
    GridTooNarrowError,
    IdentityViolationError,
    IntegrationError,
    RegimeError,
    RegimeWarning,
    SequencingError,
    WraparoundError,
)
from .grid import GridState, gaussian_grid_state, momentum_position_transform
from .gridops import (
    ImpulseReport,
    LinearPotentialEvolution,
    TrotterReport,
    accelerated_frame_trotter,
    evolve_linear_potential,
    exact_accelerated_evolution,
    free_evolution_grid,
    impulsive_boost_limit,
    momentum_boost_grid,
    velocity_boost_grid,
)
from .ionclock import (
    BranchOracle,
    ShiftComparison,
    SpectroscopyResult,
    TrapModel,
    branch_spectrum_oracle,
    displacement_operator,
    shift_comparison,
    spectroscopy_scan,
    static_hamiltonians,
)
from .operators import (
    BranchTranslation,
    FreeEvolution,
    MomentumBoost,
    Translation,
    VelocityBoost,
    apply_chain,
    apply_operator,
    conjugate_velocity_boost_by_translation,
    kinetic_energy,
    momentum_after,
    phase_increment,
    total_energy,
    trace_chain,
)
from .report import CheckResult, RunReport
from .runners import run_config, run_scenario
from .sequences import (
    FrameEntanglement,
    PairwiseDilation,
    SequenceKind,
    SequenceResult,
    build_sequence,
    closed_dilation_factor,
    closed_form_phase,
    closed_global_phase,
    default_probe,
    entanglement_frame_demo,
    pairwise_dilation,
    run_sequence,
)
from .spectrum import InternalSpectrum, ladder_spectrum, make_spectrum
from .states import (
    PlaneWaveState,
    fidelity_deviation,
    inner_product,
    internal_superposition,
    plane_wave,
    reduced_internal_entropy,
)
from .swp import (
    DilationProfile,
    PointerReading,
    SWPClock,
    TickScan,
    VarianceSeries,
    clock_state_at,
    find_effective_ticks,
    pointer_probabilities,
    read_pointer,
    variance_timeseries,
)
from .units import (
    DEFAULT_GUARD,
    ModelParams,
    RegimeGuard,
    beta_from_velocity,
    epsilon_from_energy,
    epsilon_from_frequency,
    momentum_ratio,
    theta_from_time,
)

__version__ = "0.1.0"

__all__ = [
    "BranchOracle",
    "BranchTranslation",
    "CheckResult",
    "ConfigError",
    "ConsistencyError",
    "DEFAULT_GUARD",
    "DilationProfile",
    "FrameEntanglement",
    "FreeEvolution",
    "GridState",
    "GridTooNarrowError",
    "IdentityViolationError",
    "ImpulseReport",
    "IntegrationError",
    "InternalSpectrum",
    "LinearPotentialEvolution",
    "ModelParams",
    "MomentumBoost",
    "PairwiseDilation",
    "PlaneWaveState",
    "PointerReading",
    "RegimeError",
    "RegimeGuard",
    "RegimeWarning",
    "RunConfig",
    "RunReport",
    "SWPClock",
    "ScenarioSpec",
    "SequenceKind",
    "SequenceResult",
    "SequencingError",
    "ShiftComparison",
    "SpectroscopyResult",
    "Sweep",
    "TickScan",
    "Translation",
    "TrapModel",
    "TrotterReport",
    "VarianceSeries",
    "VelocityBoost",
    "WraparoundError",
    "accelerated_frame_trotter",
    "apply_chain",
    "apply_operator",
    "beta_from_velocity",
    "branch_spectrum_oracle",
    "build_sequence",
    "clock_state_at",
    "closed_dilation_factor",
    "closed_form_phase",
    "closed_global_phase",
    "conjugate_velocity_boost_by_translation",
    "default_probe",
    "displacement_operator",
    "entanglement_frame_demo",
    "epsilon_from_energy",
    "epsilon_from_frequency",
    "evolve_linear_potential",
    "exact_accelerated_evolution",
    "fidelity_deviation",
    "find_effective_ticks",
    "free_evolution_grid",
    "gaussian_grid_state",
    "impulsive_boost_limit",
    "inner_product",
    "internal_superposition",
    "kinetic_energy",
    "ladder_spectrum",
    "load_config",
    "make_spectrum",
    "momentum_after",
    "momentum_boost_grid",
    "momentum_position_transform",
    "momentum_ratio",
    "pairwise_dilation",
    "parse_config",
    "phase_increment",
    "plane_wave",
    "pointer_probabilities",
    "read_pointer",
    "reduced_internal_entropy",
    "run_config",
    "run_scenario",
    "run_sequence",
    "shift_comparison",
    "spectroscopy_scan",
    "static_hamiltonians",
    "theta_from_time",
    "total_energy",
    "trace_chain",
    "variance_timeseries",
    "velocity_boost_grid",
]
