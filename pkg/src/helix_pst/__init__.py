"""Excitation transfer on a three-channel helical spin network.

Library layers, bottom up: core (types and index conventions),
hamiltonian (matrix construction), spectral (grouped eigendecomposition),
transfer (probabilities, bounds, dark states), attainability (phase
congruences), scan (peak searches and sweeps), cli (command line).
"""

from .attainability import (
    AttainabilityReport,
    Constraint,
    check_attainability,
    closed_closed_example_constraints,
    independent_constraints,
    same_class_step,
)
from .core import (
    CHANNELS,
    BoundaryCondition,
    BoundaryConditions,
    CouplingParams,
    NetworkSpec,
    Node,
    flat_index,
    node_from_index,
    validate_spec,
)
from .hamiltonian import CouplingKind, build_hamiltonian, dump_matrix, neighbors
from .scan import (
    ScanConfig,
    SweepRow,
    coupling_sweep_L0,
    find_pst_times,
    gamma_sweep,
    tau_min,
)
from .spectral import (
    EigenPair,
    SpectralDecomposition,
    distinct_count_closed_closed,
    eigendecompose_numeric,
    eigenpairs_closed_closed_analytic,
    group_eigenpairs,
    verify_reconstruction,
)
from .transfer import (
    TransferReport,
    dark_eigenspaces,
    dark_predicate_closed_closed,
    p_max,
    p_max_rank1,
    probability_profile,
    projector_overlaps,
    sign_factors,
    transfer_report,
    transition_probability,
)

__version__ = "0.1.0"

__all__ = [
    "AttainabilityReport",
    "BoundaryCondition",
    "BoundaryConditions",
    "CHANNELS",
    "Constraint",
    "CouplingKind",
    "CouplingParams",
    "EigenPair",
    "NetworkSpec",
    "Node",
    "ScanConfig",
    "SpectralDecomposition",
    "SweepRow",
    "TransferReport",
    "build_hamiltonian",
    "check_attainability",
    "closed_closed_example_constraints",
    "coupling_sweep_L0",
    "dark_eigenspaces",
    "dark_predicate_closed_closed",
    "distinct_count_closed_closed",
    "dump_matrix",
    "eigendecompose_numeric",
    "eigenpairs_closed_closed_analytic",
    "find_pst_times",
    "flat_index",
    "gamma_sweep",
    "group_eigenpairs",
    "independent_constraints",
    "neighbors",
    "node_from_index",
    "p_max",
    "p_max_rank1",
    "probability_profile",
    "projector_overlaps",
    "same_class_step",
    "sign_factors",
    "tau_min",
    "transfer_report",
    "transition_probability",
    "validate_spec",
]
