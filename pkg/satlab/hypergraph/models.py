"""
Value objects for d-partite d-uniform hypergraphs.

An edge takes one vertex from each of the d classes, so it is a d-tuple of labels in
[n] (1-based; coordinate i names a vertex of class i). A graph is a presence map over
the n^d tuple lattice, stored as a Python int whose bit k is the k-th tuple in
lexicographic order.
"""

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import permutations, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..config import MAX_CELLS
from ..errors import GraphError, PatternError

Edge = Tuple[int, ...]


class Mode(str, Enum):
    """Which copies of the clique count: any orientation, or p_i vertices in class i."""
    UNDIRECTED = "undirected"
    DIRECTED = "directed"


def edge_weight(edge: Sequence[int]) -> int:
    """Sum of the labels of an edge."""
    return sum(edge)


def order_statistics(edge: Sequence[int]) -> Tuple[int, ...]:
    """Nondecreasing rearrangement of the coordinates, repetitions included."""
    return tuple(sorted(edge))


def check_lattice(d: int, n: int) -> None:
    """Reject dimensions outside the supported lattice."""
    if d < 1 or n < 1:
        raise GraphError(f"need d >= 1 and n >= 1, got d={d}, n={n}")
    if n ** d > MAX_CELLS:
        raise GraphError(f"n^d = {n ** d} exceeds the lattice cap of {MAX_CELLS} cells")


@lru_cache(maxsize=64)
def lattice_tuples(d: int, n: int) -> Tuple[Edge, ...]:
    """All tuples of [n]^d in lexicographic (= bit index) order."""
    return tuple(product(range(1, n + 1), repeat=d))


def cell_index(edge: Sequence[int], n: int) -> int:
    """Bit index of a 1-based tuple."""
    index = 0
    for x in edge:
        index = index * n + (x - 1)
    return index


@dataclass(frozen=True)
class Pattern:
    """
    The target clique K^d_{p_1..p_d} inside a host with n labels per class.

    Attributes:
        n: Labels per vertex class
        p: Clique class sizes. Undirected patterns are stored sorted ascending;
            directed patterns keep the given order (p_i vertices go to class i).
        mode: Mode.UNDIRECTED or Mode.DIRECTED
    """
    n: int
    p: Tuple[int, ...]
    mode: Mode = Mode.UNDIRECTED

    def __post_init__(self):
        p = tuple(int(x) for x in self.p)
        if not p:
            raise PatternError("pattern needs at least one class size")
        if self.n < 1:
            raise PatternError(f"n must be positive, got {self.n}")
        for x in p:
            if not 1 <= x <= self.n:
                raise PatternError(f"class size {x} outside 1..{self.n}")
        mode = Mode(self.mode)
        if mode is Mode.UNDIRECTED:
            p = tuple(sorted(p))
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "mode", mode)

    @property
    def d(self) -> int:
        return len(self.p)

    @property
    def directed(self) -> bool:
        return self.mode is Mode.DIRECTED

    def orientations(self) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        """
        Distinct orientations as (pi, sizes) with sizes[i] = p[pi[i]] (0-based pi).

        Permutations are walked in lexicographic order and repeated size vectors
        are dropped, so equal p values do not produce duplicate work. Directed
        patterns only have the identity.
        """
        return _orientations(self.p, self.directed)

    def with_n(self, n: int) -> "Pattern":
        return Pattern(n=n, p=self.p, mode=self.mode)

    def to_dict(self) -> dict:
        return {"d": self.d, "n": self.n, "p": list(self.p), "mode": self.mode.value}


@lru_cache(maxsize=256)
def _orientations(p: Tuple[int, ...], directed: bool):
    d = len(p)
    identity = tuple(range(d))
    if directed:
        return [(identity, p)]
    seen = set()
    result = []
    for pi in permutations(range(d)):
        sizes = tuple(p[pi[i]] for i in range(d))
        if sizes in seen:
            continue
        seen.add(sizes)
        result.append((pi, sizes))
    return result


@dataclass(frozen=True)
class DPartiteGraph:
    """
    A d-partite d-uniform hypergraph on classes of n labels.

    Attributes:
        d: Uniformity (number of classes)
        n: Labels per class
        mask: Presence map; bit cell_index(e) is set iff e is an edge
    """
    d: int
    n: int
    mask: int = 0

    def __post_init__(self):
        check_lattice(self.d, self.n)
        if self.mask < 0 or self.mask >> self.cells:
            raise GraphError("presence map has bits outside the lattice")

    @classmethod
    def empty(cls, d: int, n: int) -> "DPartiteGraph":
        return cls(d, n, 0)

    @classmethod
    def complete(cls, d: int, n: int) -> "DPartiteGraph":
        check_lattice(d, n)
        return cls(d, n, (1 << n ** d) - 1)

    @classmethod
    def from_edges(cls, d: int, n: int, edges) -> "DPartiteGraph":
        check_lattice(d, n)
        mask = 0
        for e in edges:
            cls._check_edge(e, d, n)
            mask |= 1 << cell_index(e, n)
        return cls(d, n, mask)

    @staticmethod
    def _check_edge(e: Sequence[int], d: int, n: int) -> None:
        if len(e) != d:
            raise GraphError(f"edge {tuple(e)} has {len(e)} coordinates, expected {d}")
        for x in e:
            if not 1 <= x <= n:
                raise GraphError(f"edge {tuple(e)} has label outside 1..{n}")

    @property
    def cells(self) -> int:
        return self.n ** self.d

    @property
    def full_mask(self) -> int:
        return (1 << self.cells) - 1

    def __contains__(self, e) -> bool:
        self._check_edge(e, self.d, self.n)
        return bool(self.mask >> cell_index(e, self.n) & 1)

    def __len__(self) -> int:
        return self.edge_count

    @property
    def edge_count(self) -> int:
        return bin(self.mask).count("1")

    @property
    def is_complete(self) -> bool:
        return self.mask == self.full_mask

    def edges(self) -> Iterator[Edge]:
        """Edges in lexicographic order."""
        mask = self.mask
        tuples = lattice_tuples(self.d, self.n)
        while mask:
            low = mask & -mask
            yield tuples[low.bit_length() - 1]
            mask ^= low

    def non_edges(self) -> Iterator[Edge]:
        return self.complement().edges()

    def complement(self) -> "DPartiteGraph":
        """Complement relative to the complete graph K_{n,..,n}."""
        return DPartiteGraph(self.d, self.n, self.full_mask & ~self.mask)

    def with_edge(self, e: Sequence[int]) -> "DPartiteGraph":
        self._check_edge(e, self.d, self.n)
        return DPartiteGraph(self.d, self.n, self.mask | 1 << cell_index(e, self.n))

    def same_shape(self, other: "DPartiteGraph") -> bool:
        return self.d == other.d and self.n == other.n


@dataclass(frozen=True)
class CopyWitness:
    """
    A copy of the pattern clique that is completed by adding one edge.

    Attributes:
        classes: One sorted label tuple S_i per vertex class
        orientation: 0-based permutation pi with |S_i| = p[pi[i]]
    """
    classes: Tuple[Tuple[int, ...], ...]
    orientation: Tuple[int, ...]

    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(s) for s in self.classes)

    def cells(self, n: int) -> Iterator[int]:
        """Bit indices of every tuple spanned by the witness."""
        for e in product(*self.classes):
            yield cell_index(e, n)

    def to_dict(self) -> dict:
        return {
            "classes": [list(s) for s in self.classes],
            "orientation": [i + 1 for i in self.orientation],
        }


@dataclass(frozen=True)
class ProcessStep:
    """One addition of a saturation process."""
    edge: Edge
    witness: CopyWitness

    def to_dict(self) -> dict:
        return {"edge": list(self.edge), **self.witness.to_dict()}


@dataclass(frozen=True)
class SaturationProcess:
    """Ordered non-edges, each added together with the copy it completes."""
    steps: Tuple[ProcessStep, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[ProcessStep]:
        return iter(self.steps)

    def edges(self) -> List[Edge]:
        return [s.edge for s in self.steps]

    def reversed(self) -> "SaturationProcess":
        return SaturationProcess(tuple(reversed(self.steps)))

    def to_dict(self) -> Dict[str, list]:
        return {"steps": [s.to_dict() for s in self.steps]}


class VerdictReason(str, Enum):
    """Why a saturation process was rejected."""
    EDGE_ALREADY_PRESENT = "edge-already-present"
    WITNESS_INCOMPLETE = "witness-incomplete"
    WRONG_SIZES = "wrong-sizes"
    NOT_COMPLETE_AT_END = "not-complete-at-end"


@dataclass(frozen=True)
class ProcessVerdict:
    """
    Result of replaying a saturation process.

    Attributes:
        accepted: True iff every step replays and the final graph is complete
        step: 1-based index of the first failing step (None on acceptance or
            when only the final completeness check failed)
        reason: Failure category
        message: Human-readable detail
    """
    accepted: bool
    step: Optional[int] = None
    reason: Optional[VerdictReason] = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.accepted

    def to_dict(self) -> dict:
        return {
            "accepted": self.accepted,
            "step": self.step,
            "reason": self.reason.value if self.reason else None,
            "message": self.message,
        }
