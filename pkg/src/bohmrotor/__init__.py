"""Pilot-wave dynamics of the quantum kicked rotor.

The package evolves a rotor wavefunction spectrally through a train of
delta kicks, integrates the trajectories the wavefunction guides (via
the velocity law or via Newtonian motion under the quantum potential),
iterates the classical standard map for comparison, and measures the
quantities the two pictures are judged on: mean energy, Lyapunov
exponents, pairwise divergence and stroboscopic sections.

Hot kernels run under numba when it is importable; set
BOHMROTOR_BACKEND=numpy (or numba) to force a backend.
"""
from ._version import __version__
from .bohm import (
    NodeEvent,
    Trajectory,
    TrajectoryMeta,
    bohm_velocity,
    integrate_bohm_trajectory,
    integrate_newton_trajectory,
    quantum_force,
    quantum_potential,
)
from .classical import (
    MapState,
    classical_energy_series,
    draw_ensemble,
    lyapunov_exponent,
    lyapunov_pair_estimate,
    map_orbit,
    map_trajectory,
    standard_map_inverse,
    standard_map_step,
)
from .config import (
    EnsembleSpec,
    ScenarioConfig,
    StateSpec,
    TrajectoryIC,
    build_state,
    config_from_mapping,
    parse_config,
)
from .core import (
    Angle,
    RotorParams,
    SpectralState,
    TWO_PI,
    make_cosine_superposition,
    make_eigenstate,
    make_gaussian_packet,
    make_two_mode,
    wrap_angle,
)
from .diagnostics import (
    DivergenceReport,
    PoincareSection,
    divergence_report,
    mean_energy,
    poincare_section,
    quantum_energy_series,
)
from .errors import (
    ConfigError,
    DegenerateStateError,
    HorizonError,
    NodeProximityError,
    NumericalError,
    ParameterDomainError,
    RotorError,
    SamplingContractError,
    TruncationFailureError,
    ValidationError,
)
from .kernels import backend_name
from .presets import list_presets
from .runner import RunResult, run_scenario
from .spectral import (
    EvolutionTimeline,
    PsiSample,
    apply_kick,
    bessel_j,
    evaluate_psi,
    evolve_timeline,
    free_propagate,
    free_timeline,
    kick_kernel,
)

__all__ = [
    "__version__",
    "Angle",
    "ConfigError",
    "DegenerateStateError",
    "DivergenceReport",
    "EnsembleSpec",
    "EvolutionTimeline",
    "HorizonError",
    "MapState",
    "NodeEvent",
    "NodeProximityError",
    "NumericalError",
    "ParameterDomainError",
    "PoincareSection",
    "PsiSample",
    "RotorError",
    "RotorParams",
    "RunResult",
    "SamplingContractError",
    "ScenarioConfig",
    "SpectralState",
    "StateSpec",
    "TWO_PI",
    "Trajectory",
    "TrajectoryIC",
    "TrajectoryMeta",
    "TruncationFailureError",
    "ValidationError",
    "apply_kick",
    "backend_name",
    "bessel_j",
    "bohm_velocity",
    "build_state",
    "classical_energy_series",
    "config_from_mapping",
    "divergence_report",
    "draw_ensemble",
    "evaluate_psi",
    "evolve_timeline",
    "free_propagate",
    "free_timeline",
    "integrate_bohm_trajectory",
    "integrate_newton_trajectory",
    "kick_kernel",
    "list_presets",
    "lyapunov_exponent",
    "lyapunov_pair_estimate",
    "make_cosine_superposition",
    "make_eigenstate",
    "make_gaussian_packet",
    "make_two_mode",
    "map_orbit",
    "map_trajectory",
    "mean_energy",
    "parse_config",
    "poincare_section",
    "quantum_energy_series",
    "quantum_force",
    "quantum_potential",
    "run_scenario",
    "standard_map_inverse",
    "standard_map_step",
    "wrap_angle",
]
