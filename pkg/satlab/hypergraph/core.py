"""
Extremal constructions, copy search, greedy closure and process verification
for d-partite d-uniform hypergraphs.
"""

import logging
import random
from itertools import product
from math import prod
from typing import List, Optional, Sequence, Tuple

from ..errors import ConstructionError, GraphError, PatternError
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
    check_lattice,
    lattice_tuples,
    order_statistics,
)

logger = logging.getLogger(__name__)


def _popcount(x: int) -> int:
    return bin(x).count("1")


def find_complete(
    mask: int,
    d: int,
    n: int,
    sizes: Sequence[int],
    required: Optional[Sequence[int]] = None
) -> Optional[List[Tuple[int, ...]]]:
    """
    Find classes S_1..S_d with |S_i| = sizes[i] and S_1 x .. x S_d inside the presence map.

    Classes are fixed one at a time in increasing index; within a class, label
    sets are tried in lexicographic order. Choosing S_1 reduces the problem to the
    (d-1)-dimensional map of tuples present for every label in S_1 (the AND of the
    slices), which is searched recursively.

    Args:
        mask: Presence map over [n]^d
        d: Number of classes left
        n: Labels per class
        sizes: Required class sizes
        required: Optional edge whose label i must lie in S_i

    Returns:
        Sorted label tuples, one per class, or None if no copy exists
    """
    if d == 0:
        return [] if mask & 1 else None

    block = n ** (d - 1)
    full = (1 << block) - 1
    rest_sizes = sizes[1:]
    need = prod(rest_sizes)
    rest_required = required[1:] if required is not None else None
    req_bit = cell_index(rest_required, n) if rest_required is not None else None

    slices = [(mask >> (v * block)) & full for v in range(n)]

    def viable(acc: int) -> bool:
        if req_bit is not None and not acc >> req_bit & 1:
            return False
        return _popcount(acc) >= need

    candidates = [v for v in range(n) if viable(slices[v])]
    if required is not None:
        anchor = required[0] - 1
        if anchor not in candidates:
            return None
        fixed = [anchor]
        start = slices[anchor]
        pool = [v for v in candidates if v != anchor]
        k = sizes[0] - 1
    else:
        fixed = []
        start = full
        pool = candidates
        k = sizes[0]

    if k < 0 or len(pool) < k:
        return None

    def choose(pos: int, picked: List[int], acc: int) -> Optional[List[Tuple[int, ...]]]:
        if len(picked) == k:
            sub = find_complete(acc, d - 1, n, rest_sizes, rest_required)
            if sub is None:
                return None
            return [tuple(sorted(v + 1 for v in fixed + picked))] + sub
        for idx in range(pos, len(pool) - (k - len(picked)) + 1):
            v = pool[idx]
            narrowed = acc & slices[v]
            if not viable(narrowed):
                continue
            found = choose(idx + 1, picked + [v], narrowed)
            if found is not None:
                return found
        return None

    return choose(0, [], start)


def copy_witness_in_mask(
    mask: int, e: Edge, pattern: Pattern
) -> Optional[CopyWitness]:
    """First witness through e in the presence map (which already contains e)."""
    for pi, sizes in pattern.orientations():
        classes = find_complete(mask, pattern.d, pattern.n, sizes, required=e)
        if classes is not None:
            return CopyWitness(classes=tuple(classes), orientation=pi)
    return None


def _check_shape(g: DPartiteGraph, pattern: Pattern) -> None:
    if g.d != pattern.d or g.n != pattern.n:
        raise GraphError(
            f"graph is {g.d}-partite on {g.n} labels, pattern wants d={pattern.d}, n={pattern.n}"
        )


def new_copy_witness(
    g: DPartiteGraph, e: Sequence[int], pattern: Pattern
) -> Optional[CopyWitness]:
    """
    Find a copy of the pattern clique through e in g + e.

    Args:
        g: Host graph (e must not be an edge of it)
        e: Candidate edge
        pattern: Target clique; undirected patterns may use any orientation

    Returns:
        The first witness in search order, or None
    """
    _check_shape(g, pattern)
    e = tuple(e)
    if e in g:
        raise GraphError(f"{e} is already an edge")
    return copy_witness_in_mask(g.mask | 1 << cell_index(e, g.n), e, pattern)


def contains_oriented_complete(
    g: DPartiteGraph, sizes: Sequence[int], orientation: Sequence[int]
) -> bool:
    """
    Whether g contains a complete d-partite copy with sizes[orientation[i]] labels in class i.

    Args:
        g: Host graph
        sizes: Part sizes of the complete hypergraph
        orientation: 0-based permutation assigning parts to classes
    """
    if sorted(orientation) != list(range(g.d)) or len(sizes) != g.d:
        raise PatternError("orientation must be a permutation of the classes")
    class_sizes = [sizes[orientation[i]] for i in range(g.d)]
    if any(s < 1 or s > g.n for s in class_sizes):
        raise PatternError(f"sizes {tuple(sizes)} do not fit in {g.n} labels")
    return find_complete(g.mask, g.d, g.n, class_sizes) is not None


def contains_pattern(g: DPartiteGraph, pattern: Pattern) -> bool:
    """Whether g already contains a copy of the pattern clique in some allowed orientation."""
    _check_shape(g, pattern)
    return any(
        find_complete(g.mask, g.d, g.n, sizes) is not None
        for _, sizes in pattern.orientations()
    )


def _dominates(x: Sequence[int], p: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(order_statistics(x), p))


def build_g0(pattern: Pattern) -> DPartiteGraph:
    """
    The extremal weakly saturated graph: a tuple is a non-edge iff its i-th
    smallest coordinate is at least p_i for every i.
    """
    if pattern.directed:
        raise PatternError("G0 is defined for undirected saturation; use build_box_complement")
    d, n = pattern.d, pattern.n
    check_lattice(d, n)
    mask = 0
    for idx, x in enumerate(lattice_tuples(d, n)):
        if not _dominates(x, pattern.p):
            mask |= 1 << idx
    return DPartiteGraph(d, n, mask)


def build_box_complement(pattern: Pattern) -> DPartiteGraph:
    """Directed extremal graph: a tuple is a non-edge iff x_i >= p_i for every class i."""
    d, n = pattern.d, pattern.n
    check_lattice(d, n)
    mask = 0
    for idx, x in enumerate(lattice_tuples(d, n)):
        if any(a < b for a, b in zip(x, pattern.p)):
            mask |= 1 << idx
    return DPartiteGraph(d, n, mask)


def build_three_cliques(n: int, p: int, q: int) -> DPartiteGraph:
    """
    Bipartite warm-up construction: K_{p-1,n} on rows below p, K_{n,p-1} on columns
    below p, and the K_{q-p,q-p} block on labels p..q-1.
    """
    if not 1 <= p <= q <= n:
        raise ConstructionError(f"need 1 <= p <= q <= n, got p={p}, q={q}, n={n}")
    edges = set()
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i < p or j < p or (p <= i < q and p <= j < q):
                edges.add((i, j))
    return DPartiteGraph.from_edges(2, n, edges)


def build_gk(n: int, p: int, q: int, k: int) -> DPartiteGraph:
    """
    Strongly K_{p,q}-saturated bipartite graph with a k x k block.

    Labels 1..p-1 of both classes are complete to the other class, labels p..p+k-1
    span a complete k x k block, and each of the R = n-p+1-k remaining labels gets
    q-p further neighbours among the remaining labels of the other class
    (remaining index r is joined to indices r, r+1, .., r+q-p-1 mod R), so every
    remaining vertex has degree exactly q-1.

    Raises:
        ConstructionError: if the parameters do not define a valid graph
    """
    if not 1 <= p <= q:
        raise ConstructionError(f"need 1 <= p <= q, got p={p}, q={q}")
    if not 0 <= k <= q - p:
        raise ConstructionError(f"need 0 <= k <= q-p, got k={k}")
    if n < q or n < p - 1 + k:
        raise ConstructionError(f"n={n} too small for p={p}, q={q}, k={k}")
    remaining = n - p + 1 - k
    extra = q - p
    if remaining and remaining < extra:
        raise ConstructionError(
            f"{remaining} remaining labels cannot carry {extra} extra neighbours each"
        )

    edges = set()
    for i in range(1, n + 1):
        for c in range(1, p):
            edges.add((c, i))
            edges.add((i, c))
    for i in range(p, p + k):
        for j in range(p, p + k):
            edges.add((i, j))
    first = p + k
    for r in range(remaining):
        for t in range(extra):
            edges.add((first + r, first + (r + t) % remaining))
    return DPartiteGraph.from_edges(2, n, edges)


def build_lower_bound_gadget(h: DPartiteGraph, pattern: Pattern) -> DPartiteGraph:
    """
    Combine h with the complement of G0 on 2n labels per class.

    Labels 1..n carry h, labels n+1..2n carry the complement of G0, and every
    tuple mixing both ranges is an edge. The non-edge count is
    (n^d - |h|) + |G0|.
    """
    _check_shape(h, pattern)
    d, n = pattern.d, pattern.n
    big = 2 * n
    g0 = build_g0(pattern)
    mask = 0
    for idx, x in enumerate(lattice_tuples(d, big)):
        low = [v <= n for v in x]
        if all(low):
            present = x in h
        elif not any(low):
            present = tuple(v - n for v in x) not in g0
        else:
            present = True
        if present:
            mask |= 1 << idx
    return DPartiteGraph(d, big, mask)


def gadget_pattern(pattern: Pattern) -> Pattern:
    """The clique K^d_{n+1,..,n+1} on 2n labels that the gadget saturates."""
    return Pattern(n=2 * pattern.n, p=(pattern.n + 1,) * pattern.d, mode=Mode.UNDIRECTED)


def lift_process_to_gadget(
    h: DPartiteGraph, proc: SaturationProcess, pattern: Pattern
) -> SaturationProcess:
    """
    Explicit saturation process of the gadget for K^d_{n+1,..,n+1}.

    First h's own steps, each witnessed by its copy C together with the copy of
    K^d_{n-p_1+1,..} inside the complement of G0 oriented like C (labels
    p_{pi(i)}..n of class i, shifted into n+1..2n). Then every edge of G0, shifted,
    witnessed by all of 1..n plus its own label in each class.
    """
    _check_shape(h, pattern)
    d, n = pattern.d, pattern.n
    steps = []
    for step in proc:
        pi = step.witness.orientation
        classes = tuple(
            tuple(step.witness.classes[i]) + tuple(range(pattern.p[pi[i]] + n, 2 * n + 1))
            for i in range(d)
        )
        steps.append(ProcessStep(step.edge, CopyWitness(classes, tuple(range(d)))))
    base = tuple(range(1, n + 1))
    for x in build_g0(pattern).edges():
        shifted = tuple(v + n for v in x)
        classes = tuple(base + (v,) for v in shifted)
        steps.append(ProcessStep(shifted, CopyWitness(classes, tuple(range(d)))))
    return SaturationProcess(tuple(steps))


def extend_to_balanced(g: DPartiteGraph, pattern: Pattern) -> Tuple[DPartiteGraph, Pattern]:
    """
    Bipartite lower-bound extension: add q-p labels to each class, each joined to
    every original label of the other class. Weak K_{p,q}-saturation of g carries
    over to weak K_{q,q}-saturation of the result.
    """
    _check_shape(g, pattern)
    if pattern.d != 2 or pattern.directed:
        raise PatternError("the balancing extension is defined for undirected bipartite patterns")
    p, q = pattern.p
    n = g.n
    m = n + q - p
    edges = set(g.edges())
    for new in range(n + 1, m + 1):
        for old in range(1, n + 1):
            edges.add((new, old))
            edges.add((old, new))
    return DPartiteGraph.from_edges(2, m, edges), Pattern(n=m, p=(q, q))


def closure_mask(
    mask: int,
    pattern: Pattern,
    rng: Optional[random.Random] = None,
    record: bool = False
) -> Tuple[int, List[ProcessStep]]:
    """
    Add addable non-edges until none is left.

    Args:
        mask: Starting presence map
        pattern: Target clique
        rng: When given, each pass visits the pending non-edges in shuffled order
        record: Keep the witnesses of every addition

    Returns:
        (final presence map, recorded steps)
    """
    d, n = pattern.d, pattern.n
    tuples = lattice_tuples(d, n)
    pending = [i for i in range(n ** d) if not mask >> i & 1]
    steps: List[ProcessStep] = []
    progress = True
    while pending and progress:
        progress = False
        if rng is not None:
            rng.shuffle(pending)
        left = []
        for idx in pending:
            e = tuples[idx]
            trial = mask | 1 << idx
            witness = copy_witness_in_mask(trial, e, pattern)
            if witness is None:
                left.append(idx)
                continue
            mask = trial
            progress = True
            if record:
                steps.append(ProcessStep(e, witness))
        pending = left
    return mask, steps


def greedy_closure(
    g: DPartiteGraph, pattern: Pattern, rng: Optional[random.Random] = None
) -> Tuple[DPartiteGraph, SaturationProcess]:
    """
    Close g under single-edge additions that create a new copy of the pattern.

    The final edge set does not depend on the order (a non-edge that is addable stays
    addable after other additions); g is weakly saturated iff the closure is complete.
    """
    _check_shape(g, pattern)
    mask, steps = closure_mask(g.mask, pattern, rng=rng, record=True)
    logger.debug(f"Closure added {len(steps)} edges to a graph with {g.edge_count}")
    return DPartiteGraph(g.d, g.n, mask), SaturationProcess(tuple(steps))


def is_weakly_saturated(g: DPartiteGraph, pattern: Pattern) -> bool:
    _check_shape(g, pattern)
    mask, _ = closure_mask(g.mask, pattern)
    return mask == g.full_mask


def weight_process(pattern: Pattern) -> SaturationProcess:
    """
    The weight-ordered saturation process of G0.

    Non-edges of G0 come in nondecreasing weight, ties lexicographic. If x_i is the
    j-th smallest coordinate of x (equal coordinates ordered by class index), class i
    of the witness is {1, .., p_j - 1} plus x_i.
    """
    if pattern.directed:
        raise PatternError("the weight process saturates G0, which is undirected")
    d = pattern.d
    g0 = build_g0(pattern)
    order = sorted(g0.non_edges(), key=lambda x: (sum(x), x))
    steps = []
    for x in order:
        ranks = sorted(range(d), key=lambda i: (x[i], i))
        pi = [0] * d
        for j, i in enumerate(ranks):
            pi[i] = j
        classes = tuple(
            tuple(range(1, pattern.p[pi[i]])) + (x[i],) for i in range(d)
        )
        steps.append(ProcessStep(x, CopyWitness(classes, tuple(pi))))
    return SaturationProcess(tuple(steps))


def verify_process(
    g: DPartiteGraph, proc: SaturationProcess, pattern: Pattern
) -> ProcessVerdict:
    """
    Replay a saturation process from g.

    Each edge must be absent at its turn, its witness must contain it, have class
    sizes matching the pattern under the witness orientation, and span only tuples
    present once the edge is added. The final graph must be complete.

    Returns:
        ProcessVerdict, with the 1-based step and reason of the first failure
    """
    _check_shape(g, pattern)
    d, n = pattern.d, pattern.n
    mask = g.mask
    for number, step in enumerate(proc, start=1):
        e = tuple(step.edge)
        if len(e) != d or any(not 1 <= x <= n for x in e):
            return ProcessVerdict(False, number, VerdictReason.WRONG_SIZES,
                                  f"edge {e} is not a tuple of [{n}]^{d}")
        bit = 1 << cell_index(e, n)
        if mask & bit:
            return ProcessVerdict(False, number, VerdictReason.EDGE_ALREADY_PRESENT,
                                  f"edge {e} is already present")
        w = step.witness
        pi = tuple(w.orientation)
        if len(w.classes) != d or sorted(pi) != list(range(d)):
            return ProcessVerdict(False, number, VerdictReason.WRONG_SIZES,
                                  "witness does not have one class per vertex class")
        if pattern.directed and pi != tuple(range(d)):
            return ProcessVerdict(False, number, VerdictReason.WRONG_SIZES,
                                  "directed witnesses must use the identity orientation")
        if any(len(set(w.classes[i])) != pattern.p[pi[i]] for i in range(d)):
            return ProcessVerdict(False, number, VerdictReason.WRONG_SIZES,
                                  f"class sizes {w.sizes()} do not match the pattern")
        if any(e[i] not in w.classes[i] for i in range(d)):
            return ProcessVerdict(False, number, VerdictReason.WITNESS_INCOMPLETE,
                                  f"witness does not contain edge {e}")
        if any(not 1 <= x <= n for s in w.classes for x in s):
            return ProcessVerdict(False, number, VerdictReason.WITNESS_INCOMPLETE,
                                  "witness uses labels outside the host")
        trial = mask | bit
        for t in product(*w.classes):
            if not trial >> cell_index(t, n) & 1:
                return ProcessVerdict(False, number, VerdictReason.WITNESS_INCOMPLETE,
                                      f"tuple {t} of the witness is missing")
        mask = trial
    if mask != g.full_mask:
        missing = g.cells - bin(mask).count("1")
        return ProcessVerdict(False, None, VerdictReason.NOT_COMPLETE_AT_END,
                              f"{missing} tuples still missing after the last step")
    return ProcessVerdict(True, message=f"{len(proc)} steps replayed")
