"""Simulator and validation suite for three exactly solvable models of
photon emission from an atom hopping on a small ring.

The package builds the composite photon/atom/position Hamiltonians, evolves
initial superposition states spectrally (with an independent Runge-Kutta
integrator as an oracle), extracts emission probabilities and their
two-path interference decomposition, and cross-checks every numerical
result against explicit closed-form solutions.
"""

from .analysis import (
    EmissionRecord,
    InterferenceFit,
    conditional_emission_probability,
    decompose_interference,
    decompose_interference_grid,
    emission_probability,
    phase_sweep,
)
from .dynamics import (
    BlockDecomposition,
    Trajectory,
    block_diagonalize,
    eigendecompose_hermitian,
    evolve,
    evolve_rk4,
    propagator,
)
from .errors import (
    AnsatzViolationError,
    BlockStructureError,
    NormDriftWarning,
    NumericError,
    UnsupportedParametersError,
)
from .hilbert import (
    BasisLabel,
    EigenSystem,
    SpaceShape,
    basis_index,
    basis_ket,
    basis_label,
    dagger,
    is_hermitian,
    is_unitary,
    kron,
    pauli,
    projector,
)
from .models import (
    ModelId,
    ModelParams,
    free_hamiltonian,
    free_period,
    free_position_block,
    initial_state,
    interaction_hamiltonian,
    total_hamiltonian,
)
from .validation import ValidationReport, run_all

__version__ = "0.1.0"

__all__ = [
    "AnsatzViolationError",
    "BasisLabel",
    "BlockDecomposition",
    "BlockStructureError",
    "EigenSystem",
    "EmissionRecord",
    "InterferenceFit",
    "ModelId",
    "ModelParams",
    "NormDriftWarning",
    "NumericError",
    "SpaceShape",
    "Trajectory",
    "UnsupportedParametersError",
    "ValidationReport",
    "basis_index",
    "basis_ket",
    "basis_label",
    "block_diagonalize",
    "conditional_emission_probability",
    "dagger",
    "decompose_interference",
    "decompose_interference_grid",
    "eigendecompose_hermitian",
    "emission_probability",
    "evolve",
    "evolve_rk4",
    "free_hamiltonian",
    "free_period",
    "free_position_block",
    "initial_state",
    "interaction_hamiltonian",
    "is_hermitian",
    "is_unitary",
    "kron",
    "pauli",
    "phase_sweep",
    "projector",
    "propagator",
    "run_all",
    "total_hamiltonian",
]
