"""
Set-pair families over a partitioned ground set.

An element is a pair (part, label), both 1-based, so the parts X_1..X_d are disjoint
by construction.
"""

from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Tuple

from ..errors import FamilyError

Element = Tuple[int, int]


@dataclass(frozen=True)
class GroundSet:
    """
    Disjoint parts X_1..X_d.

    Attributes:
        part_sizes: |X_j| for each part
            Example: (3, 3) for U_1, U_2 with a* = 2 and b = (1, 1)
    """
    part_sizes: Tuple[int, ...]

    def __post_init__(self):
        if not self.part_sizes or any(s < 0 for s in self.part_sizes):
            raise FamilyError(f"invalid part sizes {self.part_sizes}")

    @property
    def d(self) -> int:
        return len(self.part_sizes)

    @property
    def offsets(self) -> Tuple[int, ...]:
        result, total = [], 0
        for s in self.part_sizes:
            result.append(total)
            total += s
        return tuple(result)

    def __contains__(self, element: Element) -> bool:
        part, label = element
        return 1 <= part <= self.d and 1 <= label <= self.part_sizes[part - 1]

    def encode(self, elements: Iterable[Element]) -> int:
        """Bitmask of a subset, parts laid out one after another."""
        offsets = self.offsets
        mask = 0
        for part, label in elements:
            mask |= 1 << (offsets[part - 1] + label - 1)
        return mask

    def part_masks(self) -> List[int]:
        return [((1 << s) - 1) << o for s, o in zip(self.part_sizes, self.offsets)]


@dataclass(frozen=True)
class FamilyPair:
    """
    Two equally long sequences of sets with per-part caps.

    Attributes:
        ground: Partitioned ground set
        A: Sets A_1..A_h
        B: Sets B_1..B_h
        caps_a: a_1..a_d (bounds |A_i ∩ X_j| up to a permutation)
        caps_b: b_1..b_d (bounds |B_i ∩ X_j|)
    """
    ground: GroundSet
    A: Tuple[FrozenSet[Element], ...]
    B: Tuple[FrozenSet[Element], ...]
    caps_a: Tuple[int, ...]
    caps_b: Tuple[int, ...]

    def __post_init__(self):
        if len(self.A) != len(self.B):
            raise FamilyError(f"|A| = {len(self.A)} but |B| = {len(self.B)}")
        if len(self.caps_a) != self.ground.d or len(self.caps_b) != self.ground.d:
            raise FamilyError("caps must have one entry per part")
        for family in (self.A, self.B):
            for s in family:
                for element in s:
                    if element not in self.ground:
                        raise FamilyError(f"element {element} is outside the ground set")

    @property
    def h(self) -> int:
        return len(self.A)

    def __len__(self) -> int:
        return self.h

    def pairs(self):
        return zip(self.A, self.B)


@dataclass(frozen=True)
class ConditionVerdict:
    """
    Outcome of checking the set-pair conditions.

    Attributes:
        passed: True when every condition holds
        condition: First violated condition (1-4), None on success
        i: 1-based pair index of the violation
        j: 1-based second pair index (condition 2) or part index (conditions 3, 4)
        message: Human-readable detail
    """
    passed: bool
    condition: Optional[int] = None
    i: Optional[int] = None
    j: Optional[int] = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "condition": self.condition,
            "i": self.i,
            "j": self.j,
            "message": self.message,
        }
