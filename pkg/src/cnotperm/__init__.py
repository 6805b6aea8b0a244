"""Exact minimal CNOT-count synthesis of wire permutations."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .gf2 import (  # noqa: F401
    Circuit,
    CnotGate,
    Gf2Matrix,
    PermSpec,
    apply_circuit_to_state,
    apply_gate_left,
    circuit_matrix,
    cycle_decompose,
    format_circuit,
    gate_matrix,
    is_reducible,
    parse_circuit,
    parse_perm,
    perm_matrix,
)
from .search import (  # noqa: F401
    DistanceTable,
    brute_force_count_sequences,
    brute_force_sequences,
    build_distance_table,
    enumerate_minimal_circuits,
    extract_one_minimal_circuit,
    load_table,
    lower_bound_rows,
    min_cnot_count,
    save_table,
    upper_bound_cycles,
)
from .symmetry import (  # noqa: F401
    EquivalenceClass,
    WireRelabeling,
    conjugate_perm,
    group_into_classes,
    orbit_under_rotation,
    relabel_circuit,
    verify_table1,
)
from .analysis import (  # noqa: F401
    PhiTrace,
    check_phi_properties,
    impossibility_report,
    paper_verification_suite,
    phi_trace,
)
