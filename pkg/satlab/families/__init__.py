"""Skew set-pair sequences and their link to saturation processes."""

from .models import ConditionVerdict, Element, FamilyPair, GroundSet
from .verifier import (
    Theorem,
    build_extremal,
    families_from_document,
    families_to_document,
    saturation_to_families,
    set_weight,
    verify_conditions,
)

__all__ = [
    "ConditionVerdict",
    "Element",
    "FamilyPair",
    "GroundSet",
    "Theorem",
    "build_extremal",
    "families_from_document",
    "families_to_document",
    "saturation_to_families",
    "set_weight",
    "verify_conditions",
]
