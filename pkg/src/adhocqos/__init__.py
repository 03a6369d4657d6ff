"""Distributed admission control for QoS in wireless ad hoc networks."""

from .distalgo import admission_control_reference, alpha, global_local_bound, local_estimate
from .feasibility import (
    DemandVector,
    check_d1_condition,
    check_degree_condition,
    check_row_constraints,
    check_shannon_condition,
    clique_bound,
    density,
    fractional_chromatic_index,
    fractional_chromatic_number_lp,
    imperfection_ratio,
)
from .graphs import Graph, SizeLimitError, build_graph
from .interference import (
    ConflictGraph,
    LineNetwork,
    Transmission,
    primary_conflict_graph,
    protocol_conflict_graph,
    validate_line_network,
)
from .simnet import run_distributed, run_flood

__version__ = "0.1.0"
