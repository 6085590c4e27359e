"""Closed forms and enumerative counts."""

from .counting import (
    CountResult,
    Method,
    alon_bound,
    conjectured_strong_sat_number,
    directed_strong_sat_number,
    directed_weak_sat_number,
    gk_edge_count,
    identity_check,
    l_set_size,
    multinomial,
    q_enumerate,
    q_formula,
    q_sets,
    qn_enumerate,
    qn_formula,
    qn_formula_summands,
    strong_sat_p1_lower_bound,
    threshold_matching,
    two_families_bound,
    w_crude_bounds,
    w_inclusion_exclusion,
    weak_sat_number,
    weak_sat_symmetric,
)

__all__ = [
    "CountResult",
    "Method",
    "alon_bound",
    "conjectured_strong_sat_number",
    "directed_strong_sat_number",
    "directed_weak_sat_number",
    "gk_edge_count",
    "identity_check",
    "l_set_size",
    "multinomial",
    "q_enumerate",
    "q_formula",
    "q_sets",
    "qn_enumerate",
    "qn_formula",
    "qn_formula_summands",
    "strong_sat_p1_lower_bound",
    "threshold_matching",
    "two_families_bound",
    "w_crude_bounds",
    "w_inclusion_exclusion",
    "weak_sat_number",
    "weak_sat_symmetric",
]
