"""
d-partite d-uniform hypergraphs: model, constructions, copy search and processes.
"""

from .models import (
    CopyWitness,
    DPartiteGraph,
    Edge,
    Mode,
    Pattern,
    ProcessStep,
    ProcessVerdict,
    SaturationProcess,
    VerdictReason,
    cell_index,
    edge_weight,
    lattice_tuples,
    order_statistics,
)
from .core import (
    build_box_complement,
    build_g0,
    build_gk,
    build_lower_bound_gadget,
    build_three_cliques,
    closure_mask,
    contains_oriented_complete,
    contains_pattern,
    copy_witness_in_mask,
    extend_to_balanced,
    find_complete,
    gadget_pattern,
    greedy_closure,
    is_weakly_saturated,
    lift_process_to_gadget,
    new_copy_witness,
    verify_process,
    weight_process,
)
from .textio import (
    pattern_from_model,
    pattern_to_model,
    process_from_document,
    process_to_document,
    read_graph,
    write_graph,
)

__all__ = [
    "CopyWitness",
    "DPartiteGraph",
    "Edge",
    "Mode",
    "Pattern",
    "ProcessStep",
    "ProcessVerdict",
    "SaturationProcess",
    "VerdictReason",
    "cell_index",
    "edge_weight",
    "lattice_tuples",
    "order_statistics",
    "build_box_complement",
    "build_g0",
    "build_gk",
    "build_lower_bound_gadget",
    "build_three_cliques",
    "closure_mask",
    "contains_oriented_complete",
    "contains_pattern",
    "copy_witness_in_mask",
    "extend_to_balanced",
    "find_complete",
    "gadget_pattern",
    "greedy_closure",
    "is_weakly_saturated",
    "lift_process_to_gadget",
    "new_copy_witness",
    "verify_process",
    "weight_process",
    "pattern_from_model",
    "pattern_to_model",
    "process_from_document",
    "process_to_document",
    "read_graph",
    "write_graph",
]
