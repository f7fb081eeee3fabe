"""Adiabatic Mach-Zehnder interferometry in a dipolar spin-1 condensate.

Exact-diagonalization toolkit for the single-mode collective-spin model

    H = (-1 - c) L^2 + 3 c (Lz^2 + n0) - h_x Lx - h_z Lz

(energies in units of the spin-exchange strength |c2'|): Fock basis and
collective operators, spectra and level scans, swept-field Schrodinger
evolution, GHZ/fringe/squeezing observables, and trap-geometry factors.
"""

__version__ = "0.1.0"

from .fock import (
    DEFAULT_MAX_ATOMS,
    CollectiveOperators,
    FockBasis,
    QuantumState,
    build_basis,
    build_collective_ops,
    fock_state,
    ghz_state,
    normalize,
    spin_coherent,
    state_from_pairs,
    state_to_pairs,
)
from .hamiltonian import (
    ClassicalConfig,
    HamiltonianMatrix,
    ModelParams,
    build_hamiltonian,
    classical_energy,
    classical_minimizer,
    critical_field,
)
from .spectra import (
    EigenDecomposition,
    LevelScan,
    eigh,
    gap_profile,
    level_scan,
    resolve_degenerate,
)
from .dynamics import (
    IntegrationError,
    MZResult,
    SweepProtocol,
    SweepStage,
    TrajectoryRecord,
    make_hold,
    make_linear_sweep,
    propagate,
    run_interferometer,
    step_propagator,
)
from .observables import (
    SpinMoments,
    SqueezingReport,
    UndefinedSqueezingError,
    extract_phase,
    fidelity,
    ghz_fidelity,
    max_phase_fidelity,
    mean_spin,
    qfi,
    spin_moments,
    squeezing_parameter,
)
from .geometry import (
    CouplingSet,
    TrapGeometry,
    chi,
    collision_params,
    dipolar_ratio,
    rescaled_couplings,
    shape_function,
)

__all__ = [
    "DEFAULT_MAX_ATOMS",
    "CollectiveOperators",
    "FockBasis",
    "QuantumState",
    "build_basis",
    "build_collective_ops",
    "fock_state",
    "ghz_state",
    "normalize",
    "spin_coherent",
    "state_from_pairs",
    "state_to_pairs",
    "ClassicalConfig",
    "HamiltonianMatrix",
    "ModelParams",
    "build_hamiltonian",
    "classical_energy",
    "classical_minimizer",
    "critical_field",
    "EigenDecomposition",
    "LevelScan",
    "eigh",
    "gap_profile",
    "level_scan",
    "resolve_degenerate",
    "IntegrationError",
    "MZResult",
    "SweepProtocol",
    "SweepStage",
    "TrajectoryRecord",
    "make_hold",
    "make_linear_sweep",
    "propagate",
    "run_interferometer",
    "step_propagator",
    "SpinMoments",
    "SqueezingReport",
    "UndefinedSqueezingError",
    "extract_phase",
    "fidelity",
    "ghz_fidelity",
    "max_phase_fidelity",
    "mean_spin",
    "qfi",
    "spin_moments",
    "squeezing_parameter",
    "CouplingSet",
    "TrapGeometry",
    "chi",
    "collision_params",
    "dipolar_ratio",
    "rescaled_couplings",
    "shape_function",
    "__version__",
]
