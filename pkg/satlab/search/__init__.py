"""Exhaustive certification of saturation numbers on small instances."""

from .oracle import (
    SearchCertificate,
    SearchKind,
    certificate_from_document,
    certificate_to_document,
    formula_for,
    min_strong_saturation,
    min_weak_saturation,
    recheck_certificate,
    strong_sat_check,
)
from .conjecture import (
    CONJECTURE_CAVEAT,
    CONJECTURE_HEADER,
    GRID_HEADER,
    ConjectureRow,
    GridRow,
    conjecture_csv,
    conjecture_table,
    grid_csv,
    weak_grid_table,
)

__all__ = [
    "SearchCertificate",
    "SearchKind",
    "certificate_from_document",
    "certificate_to_document",
    "formula_for",
    "min_strong_saturation",
    "min_weak_saturation",
    "recheck_certificate",
    "strong_sat_check",
    "CONJECTURE_CAVEAT",
    "CONJECTURE_HEADER",
    "GRID_HEADER",
    "ConjectureRow",
    "GridRow",
    "conjecture_csv",
    "conjecture_table",
    "grid_csv",
    "weak_grid_table",
]
