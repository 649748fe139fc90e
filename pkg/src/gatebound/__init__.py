"""Gate-time upper bounds, schedule synthesis, and pulse optimization for
locally controlled qubit networks."""

from .bounds import (
    BoundReport,
    GeneratorSpec,
    bound_report,
    cnot_bound,
    commutator_weight,
    concatenation_bounds,
    exact_three_spin,
    min_trotter_steps,
    nbody_chain_bound,
    poly_membership,
    run_time_bound,
    single_term_bound,
    star_term_bound,
    trotter_error_bound,
    two_qubit_bound,
)
from .depth import (
    DepthResult,
    DepthStep,
    depth,
    depth_of_support,
    depth_upper_bound,
    max_depth_table,
)
from .grape import PulseSet, control_operators, gradient, optimize, propagate, time_scan
from .network import (
    QubitNetwork,
    edge_best_coupling,
    geodesic_distance,
    heisenberg_chain,
    ising_chain,
    min_coupling,
    star,
)
from .pauli import (
    PauliString,
    commutator,
    commutes,
    hs_norm_commutator,
    multiply,
    parse_pauli,
    to_matrix,
)
from .simulator import (
    drift_matrix,
    gate_infidelity,
    normalized_error,
    target_unitary,
    unitary_of_schedule,
)
from .synthesis import (
    LocalRotation,
    Schedule,
    TwoBodyEvolution,
    select_two_body,
    synth_generator,
    synth_pauli_term,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "DepthResult",
    "DepthStep",
    "GeneratorSpec",
    "LocalRotation",
    "PauliString",
    "PulseSet",
    "QubitNetwork",
    "Schedule",
    "TwoBodyEvolution",
    "bound_report",
    "cnot_bound",
    "commutator",
    "commutator_weight",
    "commutes",
    "concatenation_bounds",
    "control_operators",
    "depth",
    "depth_of_support",
    "depth_upper_bound",
    "drift_matrix",
    "edge_best_coupling",
    "exact_three_spin",
    "gate_infidelity",
    "geodesic_distance",
    "gradient",
    "heisenberg_chain",
    "hs_norm_commutator",
    "ising_chain",
    "max_depth_table",
    "min_coupling",
    "min_trotter_steps",
    "multiply",
    "nbody_chain_bound",
    "normalized_error",
    "optimize",
    "parse_pauli",
    "poly_membership",
    "propagate",
    "run_time_bound",
    "select_two_body",
    "single_term_bound",
    "star",
    "star_term_bound",
    "synth_generator",
    "synth_pauli_term",
    "target_unitary",
    "time_scan",
    "to_matrix",
    "trotter_error_bound",
    "two_qubit_bound",
    "unitary_of_schedule",
]
