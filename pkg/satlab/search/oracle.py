"""
Exhaustive minimum searches for weak and strong saturation.

Candidate graphs are edge subsets of the n^d lattice, visited by ascending size and
lexicographically (by bit index) within a size. The first candidate that passes is
therefore a minimum and does not depend on the worker count: every layer is split
into contiguous rank ranges whose results are consumed in order.
"""

import logging
import multiprocessing
from dataclasses import dataclass
from enum import Enum
from functools import partial
from itertools import permutations, product
from math import comb
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..config import Config
from ..errors import ConstructionError, FormatError
from ..formulas import directed_weak_sat_number, weak_sat_number
from ..hypergraph import (
    DPartiteGraph,
    Pattern,
    build_box_complement,
    build_g0,
    build_gk,
    closure_mask,
    copy_witness_in_mask,
    find_complete,
    lattice_tuples,
    pattern_from_model,
    pattern_to_model,
    read_graph,
    write_graph,
)
from ..schemas import CertificateDocument, dump_document, load_document

logger = logging.getLogger(__name__)

# Candidates per worker task
CHUNK_SIZE = 2048


class SearchKind(str, Enum):
    WEAK = "weak"
    STRONG = "strong"


@dataclass(frozen=True)
class SearchCertificate:
    """
    Result of a minimum search.

    Attributes:
        kind: Weak or strong saturation
        pattern: Target clique (its mode tells directed from undirected)
        h_free: Whether the witness also had to avoid the pattern
        minimum: Minimum edge count, None when the search was cut short
        witness: First passing graph of that size in enumeration order
        checked: Candidates enumerated up to and including the witness, or up to the
            last completed size when the search was cut short
        conclusive: False when the budget stopped the search
        lower_bound: Every smaller candidate was checked and failed
        upper_bound: Size of a known passing graph (None if none is known)
    """
    kind: SearchKind
    pattern: Pattern
    h_free: bool
    minimum: Optional[int]
    witness: Optional[DPartiteGraph]
    checked: int
    conclusive: bool
    lower_bound: int
    upper_bound: Optional[int]

    @property
    def directed(self) -> bool:
        return self.pattern.directed


def _is_strong_mask(mask: int, pattern: Pattern, require_h_free: bool) -> bool:
    d, n = pattern.d, pattern.n
    if require_h_free:
        for _, sizes in pattern.orientations():
            if find_complete(mask, d, n, sizes) is not None:
                return False
    tuples = lattice_tuples(d, n)
    for idx in range(n ** d):
        if mask >> idx & 1:
            continue
        if copy_witness_in_mask(mask | 1 << idx, tuples[idx], pattern) is None:
            return False
    return True


def _is_weak_mask(mask: int, pattern: Pattern) -> bool:
    final, _ = closure_mask(mask, pattern)
    return final == (1 << pattern.n ** pattern.d) - 1


def strong_sat_check(g: DPartiteGraph, pattern: Pattern, require_h_free: bool = False) -> bool:
    """
    Whether adding any single non-edge creates a new copy of the pattern.

    Args:
        g: Graph to test
        pattern: Target clique
        require_h_free: Also require that g itself contains no copy
    """
    if g.d != pattern.d or g.n != pattern.n:
        return False
    return _is_strong_mask(g.mask, pattern, require_h_free)


def _unrank(total: int, k: int, rank: int) -> List[int]:
    """The rank-th k-subset of range(total) in lexicographic order."""
    combo = []
    x = 0
    for i in range(k):
        while True:
            count = comb(total - x - 1, k - i - 1)
            if rank < count:
                break
            rank -= count
            x += 1
        combo.append(x)
        x += 1
    return combo


def _advance(combo: List[int], total: int) -> bool:
    """Step to the next k-subset in lexicographic order; False past the last one."""
    k = len(combo)
    i = k - 1
    while i >= 0 and combo[i] == total - k + i:
        i -= 1
    if i < 0:
        return False
    combo[i] += 1
    for j in range(i + 1, k):
        combo[j] = combo[j - 1] + 1
    return True


def _symmetry_maps(pattern: Pattern) -> List[Tuple[int, ...]]:
    """
    Cell permutations induced by relabelling each class independently and, for
    undirected patterns, by permuting the classes. The identity is excluded.
    """
    d, n = pattern.d, pattern.n
    tuples = lattice_tuples(d, n)
    class_orders = [tuple(range(d))] if pattern.directed else list(permutations(range(d)))
    maps = set()
    for relabel in product(permutations(range(n)), repeat=d):
        for order in class_orders:
            image = []
            for x in tuples:
                moved = [relabel[i][x[i] - 1] for i in range(d)]
                idx = 0
                for i in range(d):
                    idx = idx * n + moved[order[i]]
                image.append(idx)
            maps.add(tuple(image))
    maps.discard(tuple(range(n ** d)))
    return sorted(maps)


def _is_canonical(combo: Sequence[int], maps: Sequence[Tuple[int, ...]]) -> bool:
    """Whether no relabelled image comes earlier in enumeration order."""
    reference = tuple(combo)
    for image in maps:
        if tuple(sorted(image[c] for c in combo)) < reference:
            return False
    return True


@dataclass(frozen=True)
class ScanContext:
    """Everything one search needs to test a candidate."""
    pattern: Pattern
    kind: SearchKind
    h_free: bool
    maps: Optional[List[Tuple[int, ...]]]

    @classmethod
    def build(cls, pattern: Pattern, kind: SearchKind, h_free: bool, symmetry: bool) -> "ScanContext":
        maps = _symmetry_maps(pattern) if symmetry else None
        return cls(pattern=pattern, kind=kind, h_free=h_free, maps=maps)


# Set once per pool worker process by _worker_init; never touched in the parent.
_WORKER: Dict[str, ScanContext] = {}


def _worker_init(context: ScanContext) -> None:
    _WORKER["context"] = context


def _scan_chunk_in_worker(task: Tuple[int, int, int]) -> Optional[int]:
    return _scan_chunk(_WORKER["context"], task)


def _scan_chunk(context: ScanContext, task: Tuple[int, int, int]) -> Optional[int]:
    """
    Check candidates of one layer with ranks in [start, stop).

    Returns:
        Rank of the first passing candidate, or None
    """
    k, start, stop = task
    pattern = context.pattern
    kind = context.kind
    h_free = context.h_free
    maps = context.maps
    total = pattern.n ** pattern.d

    combo = _unrank(total, k, start)
    rank = start
    while rank < stop:
        if maps is None or _is_canonical(combo, maps):
            mask = 0
            for c in combo:
                mask |= 1 << c
            if kind is SearchKind.WEAK:
                passed = _is_weak_mask(mask, pattern)
            else:
                passed = _is_strong_mask(mask, pattern, h_free)
            if passed:
                return rank
        rank += 1
        if rank < stop:
            _advance(combo, total)
    return None


def _layer_tasks(k: int, size: int) -> Iterator[Tuple[int, int, int]]:
    for start in range(0, size, CHUNK_SIZE):
        yield k, start, min(start + CHUNK_SIZE, size)


def _known_upper_bound(kind: SearchKind, pattern: Pattern, h_free: bool) -> Optional[int]:
    """Edge count of a construction that passes the same check, if one is known."""
    cells = pattern.n ** pattern.d
    if kind is SearchKind.WEAK:
        g = build_box_complement(pattern) if pattern.directed else build_g0(pattern)
        if _is_weak_mask(g.mask, pattern):
            return g.edge_count
        return cells
    if pattern.d == 2:
        p, q = pattern.p
        try:
            g = build_gk(pattern.n, p, q, (q - p) // 2)
        except ConstructionError:
            g = None
        if g is not None and _is_strong_mask(g.mask, pattern, h_free):
            return g.edge_count
    return None if h_free else cells


def _search(
    kind: SearchKind,
    pattern: Pattern,
    h_free: bool,
    budget: Optional[int],
    workers: Optional[int],
    symmetry: Optional[bool]
) -> SearchCertificate:
    budget = Config.BUDGET if budget is None else budget
    workers = Config.resolve_workers(workers)
    symmetry = Config.SYMMETRY if symmetry is None else symmetry
    total = pattern.n ** pattern.d
    context = ScanContext.build(pattern, kind, h_free, symmetry)

    pool = multiprocessing.Pool(workers, initializer=_worker_init, initargs=(context,)) \
        if workers > 1 else None
    if pool is None:
        scan_chunk = partial(_scan_chunk, context)
        scan = map
    else:
        scan_chunk = _scan_chunk_in_worker
        scan = pool.imap

    checked = 0
    try:
        for k in range(total + 1):
            size = comb(total, k)
            if checked + size > budget:
                logger.info(
                    f"Budget {budget} reached before size {k} "
                    f"({size} candidates) for {kind.value} {pattern.to_dict()}"
                )
                return SearchCertificate(
                    kind=kind, pattern=pattern, h_free=h_free, minimum=None, witness=None,
                    checked=checked, conclusive=False, lower_bound=k,
                    upper_bound=_known_upper_bound(kind, pattern, h_free),
                )
            logger.debug(f"Scanning {size} candidates with {k} edges")
            hit = None
            for rank in scan(scan_chunk, _layer_tasks(k, size)):
                if rank is not None:
                    hit = rank
                    break
            if hit is not None:
                combo = _unrank(total, k, hit)
                mask = 0
                for c in combo:
                    mask |= 1 << c
                witness = DPartiteGraph(pattern.d, pattern.n, mask)
                cert = SearchCertificate(
                    kind=kind, pattern=pattern, h_free=h_free, minimum=k, witness=witness,
                    checked=checked + hit + 1, conclusive=True, lower_bound=k, upper_bound=k,
                )
                logger.info(f"Minimum {kind.value} saturation for {pattern.to_dict()} is {k}")
                return cert
            checked += size
    finally:
        if pool is not None:
            pool.terminate()
            pool.join()

    # Only reachable for the h-free strong search when no candidate passes at all.
    return SearchCertificate(
        kind=kind, pattern=pattern, h_free=h_free, minimum=None, witness=None,
        checked=checked, conclusive=True, lower_bound=total + 1, upper_bound=None,
    )


def min_weak_saturation(
    pattern: Pattern,
    budget: Optional[int] = None,
    workers: Optional[int] = None,
    symmetry: Optional[bool] = None
) -> SearchCertificate:
    """
    Minimum number of edges of a weakly saturated graph, by exhaustive search.

    Args:
        pattern: Target clique; its mode selects directed or undirected saturation
        budget: Maximum number of candidates to enumerate (Config.BUDGET by default)
        workers: Worker processes; 0 means one per CPU (Config.WORKERS by default)
        symmetry: Skip candidates that are not first in their relabelling orbit
    """
    return _search(SearchKind.WEAK, pattern, False, budget, workers, symmetry)


def min_strong_saturation(
    pattern: Pattern,
    require_h_free: bool = False,
    budget: Optional[int] = None,
    workers: Optional[int] = None,
    symmetry: Optional[bool] = None
) -> SearchCertificate:
    """Minimum number of edges of a strongly saturated graph, by exhaustive search."""
    return _search(SearchKind.STRONG, pattern, require_h_free, budget, workers, symmetry)


def formula_for(pattern: Pattern) -> int:
    """Closed-form weak saturation number matching the pattern's mode."""
    if pattern.directed:
        return directed_weak_sat_number(pattern.n, pattern.p).value
    return weak_sat_number(pattern.n, pattern.p).value


def recheck_certificate(cert: SearchCertificate) -> bool:
    """Replay the saturation check on the certificate witness."""
    if cert.witness is None:
        return False
    if cert.witness.edge_count != cert.minimum:
        return False
    if cert.kind is SearchKind.WEAK:
        return _is_weak_mask(cert.witness.mask, cert.pattern)
    return strong_sat_check(cert.witness, cert.pattern, cert.h_free)


def certificate_to_document(cert: SearchCertificate) -> str:
    doc = CertificateDocument(
        kind=cert.kind.value,
        directed=cert.directed,
        h_free=cert.h_free,
        pattern=pattern_to_model(cert.pattern),
        minimum=cert.minimum,
        witness=write_graph(cert.witness) if cert.witness is not None else None,
        checked=cert.checked,
        conclusive=cert.conclusive,
        lower_bound=cert.lower_bound,
        upper_bound=cert.upper_bound,
    )
    return dump_document(doc)


def certificate_from_document(text: str) -> SearchCertificate:
    """
    Parse a certificate document.

    Raises:
        FormatError: on malformed JSON or a witness that does not fit the pattern
    """
    doc = load_document(text, CertificateDocument)
    pattern = pattern_from_model(doc.pattern)
    if doc.directed != pattern.directed:
        raise FormatError("certificate 'directed' flag disagrees with the pattern mode")
    witness = read_graph(doc.witness) if doc.witness is not None else None
    if witness is not None and (witness.d != pattern.d or witness.n != pattern.n):
        raise FormatError("certificate witness does not match the pattern shape")
    return SearchCertificate(
        kind=SearchKind(doc.kind),
        pattern=pattern,
        h_free=doc.h_free,
        minimum=doc.minimum,
        witness=witness,
        checked=doc.checked,
        conclusive=doc.conclusive,
        lower_bound=doc.lower_bound,
        upper_bound=doc.upper_bound,
    )
