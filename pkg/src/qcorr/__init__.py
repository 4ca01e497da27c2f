"""Correlation measures and consensus bounds for small multipartite quantum states.

The package computes classical correlations, quantum discord, and
entanglement of formation for bipartitions of few-qubit states, audits the
inequalities tying them to per-site consensus parameters, and reproduces
the star-network sweep those bounds were designed for.
"""

__version__ = "0.1.0"

from .core import (
    DensityMatrix,
    PureState,
    bell_state,
    binary_entropy,
    density_from_pure,
    ghz_state,
    kron,
    partial_trace,
    permute_subsystems,
    random_density_matrix,
    random_pure_state,
    reduced_density_matrix,
    relative_entropy,
    trace_distance_half,
    von_neumann_entropy,
    w_state,
)
from .measurement import (
    BlochAngles,
    MeasurementOptimum,
    OptimizerSettings,
    ProjectiveMeasurement,
    UnsupportedDimensionError,
    apply_local_measurement,
    classical_correlations,
    qubit_projectors,
)
from .correlations import (
    Bipartition,
    ConvexRoofSettings,
    CorrelationRecord,
    concurrence_two_qubit,
    entanglement_entropy,
    eof_convex_roof_numeric,
    eof_two_qubit,
    mutual_information,
    quantum_discord,
)
from .bounds import (
    BoundAudit,
    ConsensusReport,
    EnvConsensusReport,
    UndefinedConsensusError,
    consensus_delta,
    consensus_from_marginals,
    continuity_chain_audit,
    discord_bound_audit,
    env_consensus,
    env_eof_bound_audit,
    eof_bound_audit,
    f_bound_audit,
    fanchini_identity_audit,
    koashi_winter_audit,
    kw_j_complement,
    relative_entropy_bound_audit,
    relative_entropy_upper_bound,
    remark_audit,
)
from .starsim import (
    StarConfig,
    SweepRow,
    analytic_marginals,
    build_universe_brute,
    cmaybe_gate,
    run_sweep,
)
from .stateio import load_state, save_state

__all__ = [
    "__version__",
    "DensityMatrix",
    "PureState",
    "bell_state",
    "binary_entropy",
    "density_from_pure",
    "ghz_state",
    "kron",
    "partial_trace",
    "permute_subsystems",
    "random_density_matrix",
    "random_pure_state",
    "reduced_density_matrix",
    "relative_entropy",
    "trace_distance_half",
    "von_neumann_entropy",
    "w_state",
    "BlochAngles",
    "MeasurementOptimum",
    "OptimizerSettings",
    "ProjectiveMeasurement",
    "UnsupportedDimensionError",
    "apply_local_measurement",
    "classical_correlations",
    "qubit_projectors",
    "Bipartition",
    "ConvexRoofSettings",
    "CorrelationRecord",
    "concurrence_two_qubit",
    "entanglement_entropy",
    "eof_convex_roof_numeric",
    "eof_two_qubit",
    "mutual_information",
    "quantum_discord",
    "BoundAudit",
    "ConsensusReport",
    "EnvConsensusReport",
    "UndefinedConsensusError",
    "consensus_delta",
    "consensus_from_marginals",
    "continuity_chain_audit",
    "discord_bound_audit",
    "env_consensus",
    "env_eof_bound_audit",
    "eof_bound_audit",
    "f_bound_audit",
    "fanchini_identity_audit",
    "koashi_winter_audit",
    "kw_j_complement",
    "relative_entropy_bound_audit",
    "relative_entropy_upper_bound",
    "remark_audit",
    "StarConfig",
    "SweepRow",
    "analytic_marginals",
    "build_universe_brute",
    "cmaybe_gate",
    "run_sweep",
    "load_state",
    "save_state",
]
