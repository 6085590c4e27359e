"""Randomized invariants. Plain-random suites draw from SEED; the rest use hypothesis."""

import random
from itertools import permutations

from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SEED
from satlab.formulas import q_enumerate, q_formula, threshold_matching
from satlab.hypergraph import (
    DPartiteGraph,
    Mode,
    Pattern,
    copy_witness_in_mask,
    greedy_closure,
    verify_process,
)

GRAPHS_PER_PATTERN = 50
ORDERS_PER_GRAPH = 100


def test_closure_does_not_depend_on_order():
    rng = random.Random(SEED)
    d, n = 2, 3
    for p in [(1, 2), (2, 2), (2, 3), (1, 3)]:
        pattern = Pattern(n=n, p=p)
        for _ in range(GRAPHS_PER_PATTERN):
            g = DPartiteGraph(d, n, rng.getrandbits(n ** d))
            reference, _ = greedy_closure(g, pattern)
            for _ in range(ORDERS_PER_GRAPH):
                closed, proc = greedy_closure(g, pattern, rng=rng)
                assert closed == reference, (p, g.mask)
                assert len(proc) == reference.edge_count - g.edge_count


def test_shuffled_process_replays_when_complete():
    rng = random.Random(SEED)
    pattern = Pattern(n=3, p=(2, 2), mode=Mode.DIRECTED)
    for _ in range(GRAPHS_PER_PATTERN):
        g = DPartiteGraph(2, 3, rng.getrandbits(9))
        closed, proc = greedy_closure(g, pattern, rng=rng)
        if closed.is_complete:
            assert verify_process(g, proc, pattern)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=(1 << 9) - 1), st.integers(0, 8))
def test_addability_is_monotone(mask, idx):
    pattern = Pattern(n=3, p=(2, 2))
    if mask >> idx & 1:
        return
    tuples = [(x, y) for x in (1, 2, 3) for y in (1, 2, 3)]
    trial = mask | 1 << idx
    if copy_witness_in_mask(trial, tuples[idx], pattern) is None:
        return
    for other in range(9):
        bigger = trial | 1 << other
        if other != idx:
            assert copy_witness_in_mask(bigger, tuples[idx], pattern) is not None


small_caps = st.integers(min_value=1, max_value=4).flatmap(
    lambda d: st.tuples(
        st.lists(st.integers(0, 3), min_size=d, max_size=d),
        st.lists(st.integers(0, 3), min_size=d, max_size=d),
    )
)


@settings(max_examples=150, deadline=None)
@given(small_caps, st.randoms(use_true_random=False))
def test_q_is_symmetric_under_joint_permutation(caps, rnd):
    a, b = caps
    order = list(range(len(a)))
    rnd.shuffle(order)
    permuted_b = [b[i] for i in order]
    assert q_enumerate([a[i] for i in order], permuted_b).value == q_enumerate(a, b).value


@settings(max_examples=150, deadline=None)
@given(small_caps, st.randoms(use_true_random=False))
def test_q_depends_on_a_as_a_multiset(caps, rnd):
    a, b = caps
    shuffled = list(a)
    rnd.shuffle(shuffled)
    assert q_enumerate(shuffled, b).value == q_enumerate(a, b).value


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=1, max_value=3).flatmap(
    lambda d: st.tuples(
        st.lists(st.integers(0, 2), min_size=d, max_size=d),
        st.lists(st.integers(0, 2), min_size=d, max_size=d),
    )
))
def test_q_formula_agrees(caps):
    a, b = caps
    assert q_formula(a, b).value == q_enumerate(a, b).value


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=1, max_value=5).flatmap(
    lambda d: st.tuples(
        st.lists(st.integers(0, 5), min_size=d, max_size=d),
        st.lists(st.integers(0, 5), min_size=d, max_size=d),
    )
))
def test_sorted_dominance_matches_permutation_search(vectors):
    m, a = vectors
    dominated = all(x <= y for x, y in zip(sorted(m), sorted(a)))
    exists = any(all(m[j] <= a[pi[j]] for j in range(len(m))) for pi in permutations(range(len(m))))
    assert dominated == exists
    assert (threshold_matching(m, a) is not None) == exists


def test_pointwise_dominance_survives_sorting():
    rng = random.Random(SEED)
    for _ in range(10_000):
        d = rng.randint(1, 6)
        y = [rng.uniform(-10.0, 10.0) for _ in range(d)]
        x = [v + rng.uniform(0.0, 5.0) for v in y]
        assert all(a >= b for a, b in zip(sorted(x), sorted(y))), (x, y)
