"""
Checks and constructions for skew set-pair sequences.

A sequence (A_1, B_1), .., (A_h, B_h) over parts X_1..X_d is valid when
  1. A_i and B_i are disjoint,
  2. A_i meets B_j whenever i < j,
  3. |B_i ∩ X_j| <= b_j,
  4. |A_i ∩ X_j| <= a_{pi(j)} for some permutation pi (or pi = identity for the
     classical version with fixed caps).
"""

import logging
from enum import Enum
from typing import List, Sequence

from ..errors import ConstructionError, FamilyError
from ..formulas import q_sets, threshold_matching
from ..hypergraph import DPartiteGraph, Pattern, SaturationProcess, verify_process
from ..schemas import FamiliesDocument, PairModel, dump_document, load_document
from .models import ConditionVerdict, FamilyPair, GroundSet

logger = logging.getLogger(__name__)


class Theorem(str, Enum):
    """Which form of condition 4 to check."""
    NEW = "new"
    ALON = "alon"


def _popcount(x: int) -> int:
    return bin(x).count("1")


def verify_conditions(
    fp: FamilyPair,
    theorem: Theorem = Theorem.NEW,
    non_skew: bool = False
) -> ConditionVerdict:
    """
    Check conditions 1-4 in order and report the first violation.

    Args:
        fp: Families to check
        theorem: NEW lets the caps be permuted per pair; ALON fixes them by part
        non_skew: Require condition 2 for every i != j, not only i < j

    Returns:
        ConditionVerdict with 1-based indices of the first failure
    """
    theorem = Theorem(theorem)
    ground = fp.ground
    h = fp.h
    a_masks = [ground.encode(s) for s in fp.A]
    b_masks = [ground.encode(s) for s in fp.B]
    parts = ground.part_masks()

    for i in range(h):
        if a_masks[i] & b_masks[i]:
            return ConditionVerdict(False, 1, i + 1, None, f"A_{i + 1} meets B_{i + 1}")

    # covers[e] has bit j set iff element e lies in B_j
    width = sum(ground.part_sizes)
    covers = [0] * width
    for j, mask in enumerate(b_masks):
        while mask:
            low = mask & -mask
            covers[low.bit_length() - 1] |= 1 << j
            mask ^= low
    everything = (1 << h) - 1
    for i in range(h):
        hit = 0
        mask = a_masks[i]
        while mask:
            low = mask & -mask
            hit |= covers[low.bit_length() - 1]
            mask ^= low
        if non_skew:
            required = everything & ~(1 << i)
        else:
            required = everything & ~((1 << (i + 1)) - 1)
        missing = required & ~hit
        if missing:
            j = (missing & -missing).bit_length()
            return ConditionVerdict(False, 2, i + 1, j, f"A_{i + 1} misses B_{j}")

    for i in range(h):
        for j, part in enumerate(parts):
            size = _popcount(b_masks[i] & part)
            if size > fp.caps_b[j]:
                return ConditionVerdict(
                    False, 3, i + 1, j + 1,
                    f"|B_{i + 1} ∩ X_{j + 1}| = {size} exceeds b_{j + 1} = {fp.caps_b[j]}"
                )

    for i in range(h):
        sizes = [_popcount(a_masks[i] & part) for part in parts]
        if theorem is Theorem.NEW:
            if threshold_matching(sizes, fp.caps_a) is None:
                return ConditionVerdict(
                    False, 4, i + 1, None,
                    f"no permutation of the caps bounds A_{i + 1} part sizes {tuple(sizes)}"
                )
        else:
            for j, size in enumerate(sizes):
                if size > fp.caps_a[j]:
                    return ConditionVerdict(
                        False, 4, i + 1, j + 1,
                        f"|A_{i + 1} ∩ X_{j + 1}| = {size} exceeds a_{j + 1} = {fp.caps_a[j]}"
                    )

    return ConditionVerdict(True, message=f"{h} pairs satisfy all conditions")


def set_weight(s) -> int:
    """Sum of labels of a set of (part, label) elements."""
    return sum(label for _, label in s)


def build_extremal(a: Sequence[int], b: Sequence[int]) -> FamilyPair:
    """
    A sequence of Q(a, b) set pairs meeting every condition.

    B runs over the sets counted by Q(a, b) in decreasing weight, ties broken by the
    ascending sorted element list. For each B_i the caps are assigned by the sorted
    threshold matching pi, and A_i ∩ U_j = [a_{pi(j)} + b_j] minus B_i.
    """
    a, b = tuple(a), tuple(b)
    top = max(a) if a else 0
    ground = GroundSet(tuple(top + bj for bj in b))

    encoded = []
    for s in q_sets(a, b):
        elements = tuple((j + 1, x) for j, part in enumerate(s) for x in part)
        encoded.append((s, elements))
    encoded.sort(key=lambda item: (-set_weight(item[1]), item[1]))

    family_a, family_b = [], []
    for s, elements in encoded:
        m = [part[-1] - bj if bj else 0 for part, bj in zip(s, b)]
        pi = threshold_matching(m, a)
        if pi is None:
            raise ConstructionError(f"set {elements} has no cap assignment")
        a_set = frozenset(
            (j + 1, x)
            for j in range(len(b))
            for x in range(1, a[pi[j]] + b[j] + 1)
            if x not in s[j]
        )
        family_a.append(a_set)
        family_b.append(frozenset(elements))

    logger.debug(f"Built {len(family_b)} extremal pairs for a={a}, b={b}")
    return FamilyPair(ground, tuple(family_a), tuple(family_b), a, b)


def saturation_to_families(
    g: DPartiteGraph, proc: SaturationProcess, pattern: Pattern
) -> FamilyPair:
    """
    Turn a saturation process into a set-pair sequence.

    The ground set is the vertex set (part j = vertex class j). A_i is every vertex
    outside the i-th witness and B_i the vertices of the i-th added edge; caps are
    a = (n - p_1, .., n - p_d) and b = (1, .., 1).

    Raises:
        ConstructionError: if the process does not saturate g
    """
    verdict = verify_process(g, proc, pattern)
    if not verdict:
        raise ConstructionError(f"process rejected at step {verdict.step}: {verdict.message}")
    d, n = pattern.d, pattern.n
    everything = frozenset((j + 1, x) for j in range(d) for x in range(1, n + 1))
    family_a, family_b = [], []
    for step in proc:
        used = frozenset((j + 1, x) for j, s in enumerate(step.witness.classes) for x in s)
        family_a.append(everything - used)
        family_b.append(frozenset((j + 1, x) for j, x in enumerate(step.edge)))
    return FamilyPair(
        GroundSet((n,) * d),
        tuple(family_a),
        tuple(family_b),
        tuple(n - x for x in pattern.p),
        (1,) * d,
    )


def _sorted_elements(s) -> List[List[int]]:
    return [list(e) for e in sorted(s)]


def families_to_document(fp: FamilyPair) -> str:
    doc = FamiliesDocument(
        parts=list(fp.ground.part_sizes),
        caps_a=list(fp.caps_a),
        caps_b=list(fp.caps_b),
        pairs=[PairModel(A=_sorted_elements(x), B=_sorted_elements(y)) for x, y in fp.pairs()],
    )
    return dump_document(doc)


def families_from_document(text: str) -> FamilyPair:
    """
    Parse a families document.

    Raises:
        FormatError: on malformed JSON
        FamilyError: on elements outside the declared parts
    """
    doc = load_document(text, FamiliesDocument)
    if len(doc.caps_a) != len(doc.parts) or len(doc.caps_b) != len(doc.parts):
        raise FamilyError("caps must have one entry per part")
    return FamilyPair(
        GroundSet(tuple(doc.parts)),
        tuple(frozenset(tuple(e) for e in pair.A) for pair in doc.pairs),
        tuple(frozenset(tuple(e) for e in pair.B) for pair in doc.pairs),
        tuple(doc.caps_a),
        tuple(doc.caps_b),
    )
