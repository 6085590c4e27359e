from itertools import permutations

import pytest

from conftest import small_grid, sorted_patterns
from satlab.errors import ConstructionError, GraphError, PatternError
from satlab.formulas import gk_edge_count, weak_sat_number
from satlab.hypergraph import (
    CopyWitness,
    DPartiteGraph,
    Mode,
    Pattern,
    ProcessStep,
    SaturationProcess,
    VerdictReason,
    build_box_complement,
    build_g0,
    build_gk,
    build_lower_bound_gadget,
    build_three_cliques,
    contains_oriented_complete,
    contains_pattern,
    extend_to_balanced,
    gadget_pattern,
    greedy_closure,
    is_weakly_saturated,
    lift_process_to_gadget,
    new_copy_witness,
    order_statistics,
    verify_process,
    weight_process,
)


class TestModels:

    def test_pattern_sorts_undirected(self):
        assert Pattern(n=4, p=(3, 2)).p == (2, 3)

    def test_pattern_keeps_directed_order(self):
        pattern = Pattern(n=4, p=(3, 2), mode=Mode.DIRECTED)
        assert pattern.p == (3, 2)
        assert pattern.orientations() == [((0, 1), (3, 2))]

    def test_pattern_rejects_out_of_range(self):
        with pytest.raises(PatternError):
            Pattern(n=2, p=(1, 3))
        with pytest.raises(PatternError):
            Pattern(n=2, p=(0, 1))

    def test_orientations_collapse_repeats(self):
        assert len(Pattern(n=3, p=(2, 2, 2)).orientations()) == 1
        assert len(Pattern(n=3, p=(1, 2, 2)).orientations()) == 3
        assert len(Pattern(n=3, p=(1, 2, 3)).orientations()) == 6

    def test_order_statistics_keep_repeats(self):
        assert order_statistics((3, 1, 3)) == (1, 3, 3)

    def test_complement_is_involution(self):
        g = DPartiteGraph.from_edges(2, 3, [(1, 2), (3, 3)])
        assert g.complement().complement() == g
        assert g.complement().edge_count == 7

    def test_edges_are_lexicographic(self):
        g = DPartiteGraph.from_edges(2, 3, [(3, 1), (1, 2), (2, 3)])
        assert list(g.edges()) == [(1, 2), (2, 3), (3, 1)]

    def test_rejects_bad_edge(self):
        with pytest.raises(GraphError):
            DPartiteGraph.from_edges(2, 3, [(1, 4)])
        with pytest.raises(GraphError):
            DPartiteGraph.from_edges(2, 3, [(1, 2, 3)])

    def test_lattice_cap(self):
        with pytest.raises(GraphError):
            DPartiteGraph.empty(5, 64)


class TestBuildG0:

    def test_two_by_two_in_three(self):
        g = build_g0(Pattern(n=3, p=(2, 2)))
        assert g.edge_count == 5
        assert set(g.non_edges()) == {(2, 2), (2, 3), (3, 2), (3, 3)}

    def test_single_edge(self):
        g = build_g0(Pattern(n=3, p=(1, 2)))
        assert list(g.edges()) == [(1, 1)]

    @pytest.mark.parametrize("d,n", [(1, 3), (2, 3), (3, 2)])
    def test_all_ones_is_empty(self, d, n):
        assert build_g0(Pattern(n=n, p=(1,) * d)).edge_count == 0

    def test_all_n_has_one_non_edge(self):
        g = build_g0(Pattern(n=3, p=(3, 3, 3)))
        assert list(g.non_edges()) == [(3, 3, 3)]

    def test_rejects_directed(self):
        with pytest.raises(PatternError):
            build_g0(Pattern(n=3, p=(1, 2), mode=Mode.DIRECTED))

    @pytest.mark.parametrize("d,n", small_grid(3, 4, max_cells=64))
    def test_edge_count_matches_formula(self, d, n):
        for pattern in sorted_patterns(d, n):
            assert build_g0(pattern).edge_count == weak_sat_number(n, pattern.p).value

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_three_cliques_coincide(self, n):
        for p in range(1, n + 1):
            for q in range(p, n + 1):
                assert build_three_cliques(n, p, q) == build_g0(Pattern(n=n, p=(p, q)))


class TestCopyWitness:

    def test_needs_swapped_orientation(self):
        g = DPartiteGraph.from_edges(2, 2, [(1, 1), (1, 2)])
        w = new_copy_witness(g, (2, 1), Pattern(n=2, p=(1, 2)))
        assert w == CopyWitness(classes=((1, 2), (1,)), orientation=(1, 0))
        assert w.to_dict()["orientation"] == [2, 1]

    def test_edge_is_its_own_copy(self):
        w = new_copy_witness(DPartiteGraph.empty(2, 2), (1, 1), Pattern(n=2, p=(1, 1)))
        assert w.classes == ((1,), (1,))

    def test_no_witness_on_empty(self):
        assert new_copy_witness(DPartiteGraph.empty(2, 2), (1, 1), Pattern(n=2, p=(1, 2))) is None

    def test_directed_only_identity(self):
        g = DPartiteGraph.from_edges(2, 2, [(1, 1), (1, 2)])
        pattern = Pattern(n=2, p=(1, 2), mode=Mode.DIRECTED)
        assert new_copy_witness(g, (2, 1), pattern) is None
        w = new_copy_witness(DPartiteGraph.from_edges(2, 2, [(1, 1)]), (1, 2), pattern)
        assert w.classes == ((1,), (1, 2))

    def test_rejects_present_edge(self):
        g = DPartiteGraph.from_edges(2, 2, [(1, 1)])
        with pytest.raises(GraphError):
            new_copy_witness(g, (1, 1), Pattern(n=2, p=(1, 1)))

    def test_witness_contains_edge_and_is_complete(self):
        pattern = Pattern(n=4, p=(2, 3))
        g = build_g0(pattern)
        e = (2, 3)
        w = new_copy_witness(g, e, pattern)
        assert w is not None
        assert all(e[i] in w.classes[i] for i in range(2))
        full = g.with_edge(e)
        assert all(full.mask >> c & 1 for c in w.cells(pattern.n))


class TestOrientedComplete:

    def test_identity_orientation(self):
        comp = build_g0(Pattern(n=3, p=(2, 3))).complement()
        assert contains_oriented_complete(comp, (2, 1), (0, 1))

    def test_swapped_orientation(self):
        comp = build_g0(Pattern(n=3, p=(2, 3))).complement()
        assert contains_oriented_complete(comp, (2, 1), (1, 0))

    def test_empty_graph(self):
        assert not contains_oriented_complete(DPartiteGraph.empty(2, 3), (1, 1), (0, 1))

    def test_rejects_bad_orientation(self):
        with pytest.raises(PatternError):
            contains_oriented_complete(DPartiteGraph.empty(2, 3), (1, 1), (0, 0))

    @pytest.mark.parametrize("d,n", small_grid(3, 4))
    def test_complement_holds_every_orientation(self, d, n):
        for pattern in sorted_patterns(d, n):
            comp = build_g0(pattern).complement()
            sizes = tuple(n - x + 1 for x in pattern.p)
            for pi in permutations(range(d)):
                assert contains_oriented_complete(comp, sizes, pi), (pattern, pi)


class TestClosureAndProcesses:

    def test_g0_closes_with_four_steps(self):
        pattern = Pattern(n=3, p=(2, 2))
        closed, proc = greedy_closure(build_g0(pattern), pattern)
        assert closed.is_complete
        assert len(proc) == 4

    def test_complete_graph_needs_nothing(self):
        g = DPartiteGraph.complete(2, 3)
        closed, proc = greedy_closure(g, Pattern(n=3, p=(2, 2)))
        assert closed == g
        assert len(proc) == 0

    def test_empty_graph_stays_empty(self):
        g = DPartiteGraph.empty(2, 3)
        closed, proc = greedy_closure(g, Pattern(n=3, p=(2, 2)))
        assert closed.edge_count == 0
        assert len(proc) == 0

    def test_weight_process_order_and_first_witness(self):
        proc = weight_process(Pattern(n=3, p=(2, 2)))
        assert proc.edges() == [(2, 2), (2, 3), (3, 2), (3, 3)]
        assert proc.steps[0].witness.classes == ((1, 2), (1, 2))

    def test_weight_process_weights(self):
        proc = weight_process(Pattern(n=2, p=(1, 2)))
        assert [sum(e) for e in proc.edges()] == [3, 3, 4]

    def test_weight_process_all_ones(self):
        pattern = Pattern(n=2, p=(1, 1, 1))
        proc = weight_process(pattern)
        assert len(proc) == 8
        for step in proc:
            assert step.witness.classes == tuple((x,) for x in step.edge)

    def test_weight_process_verifies(self):
        pattern = Pattern(n=3, p=(2, 2))
        assert verify_process(build_g0(pattern), weight_process(pattern), pattern)

    def test_complete_graph_empty_process_verifies(self):
        verdict = verify_process(DPartiteGraph.complete(2, 3), SaturationProcess(), Pattern(n=3, p=(2, 2)))
        assert verdict.accepted

    def test_reversed_process_rejected_at_first_step(self):
        pattern = Pattern(n=3, p=(2, 3))
        verdict = verify_process(build_g0(pattern), weight_process(pattern).reversed(), pattern)
        assert not verdict
        assert verdict.step == 1
        assert verdict.reason is VerdictReason.WITNESS_INCOMPLETE

    def test_rejects_present_edge(self):
        pattern = Pattern(n=3, p=(2, 2))
        g = build_g0(pattern)
        step = weight_process(pattern).steps[0]
        bad = SaturationProcess((ProcessStep((1, 1), step.witness),))
        verdict = verify_process(g, bad, pattern)
        assert verdict.reason is VerdictReason.EDGE_ALREADY_PRESENT
        assert verdict.step == 1

    def test_rejects_wrong_sizes(self):
        pattern = Pattern(n=3, p=(2, 2))
        witness = CopyWitness(classes=((1, 2), (1, 2, 3)), orientation=(0, 1))
        bad = SaturationProcess((ProcessStep((2, 2), witness),))
        verdict = verify_process(build_g0(pattern), bad, pattern)
        assert verdict.reason is VerdictReason.WRONG_SIZES

    def test_rejects_unfinished(self):
        pattern = Pattern(n=3, p=(2, 2))
        short = SaturationProcess(weight_process(pattern).steps[:2])
        verdict = verify_process(build_g0(pattern), short, pattern)
        assert verdict.reason is VerdictReason.NOT_COMPLETE_AT_END
        assert verdict.step is None

    def test_closure_process_verifies(self):
        pattern = Pattern(n=4, p=(2, 3))
        g = build_g0(pattern)
        _, proc = greedy_closure(g, pattern)
        assert verify_process(g, proc, pattern)

    @pytest.mark.parametrize("d,n", small_grid(3, 4, max_cells=27))
    def test_g0_is_weakly_saturated(self, d, n):
        for pattern in sorted_patterns(d, n):
            g = build_g0(pattern)
            assert verify_process(g, weight_process(pattern), pattern), pattern
            assert greedy_closure(g, pattern)[0].is_complete, pattern

    @pytest.mark.slow
    @pytest.mark.parametrize("d,n", [(3, 4)])
    def test_g0_is_weakly_saturated_large(self, d, n):
        for pattern in sorted_patterns(d, n):
            g = build_g0(pattern)
            assert verify_process(g, weight_process(pattern), pattern), pattern
            assert greedy_closure(g, pattern)[0].is_complete, pattern

    def test_box_complement_directed(self):
        pattern = Pattern(n=4, p=(3, 2), mode=Mode.DIRECTED)
        g = build_box_complement(pattern)
        assert g.edge_count == 16 - 2 * 3
        assert greedy_closure(g, pattern)[0].is_complete

    def test_shuffled_closure_same_final_graph(self, rng):
        pattern = Pattern(n=3, p=(2, 2))
        g = DPartiteGraph.from_edges(2, 3, [(1, 1), (1, 2), (2, 1), (1, 3), (3, 3)])
        expected, _ = greedy_closure(g, pattern)
        for _ in range(20):
            assert greedy_closure(g, pattern, rng=rng)[0] == expected


class TestGadget:

    def test_edge_count(self):
        pattern = Pattern(n=2, p=(1, 2))
        h = build_g0(pattern)
        assert build_lower_bound_gadget(h, pattern).edge_count == 12

    def test_complete_h(self):
        pattern = Pattern(n=2, p=(1, 1))
        g = build_lower_bound_gadget(DPartiteGraph.complete(2, 2), pattern)
        assert g.is_complete and g.n == 4

    def test_non_edge_count(self):
        pattern = Pattern(n=3, p=(2, 3))
        h = DPartiteGraph.from_edges(2, 3, [(1, 1), (2, 2)])
        g = build_lower_bound_gadget(h, pattern)
        assert g.cells - g.edge_count == (9 - 2) + build_g0(pattern).edge_count

    def test_dimension_mismatch(self):
        with pytest.raises(GraphError):
            build_lower_bound_gadget(DPartiteGraph.empty(2, 3), Pattern(n=2, p=(1, 2)))

    @pytest.mark.parametrize("p", [(1, 2), (2, 2), (2, 3), (1, 3)])
    def test_lifted_process_saturates_gadget(self, p):
        pattern = Pattern(n=3, p=p)
        h = build_g0(pattern)
        proc = weight_process(pattern)
        gadget = build_lower_bound_gadget(h, pattern)
        big = gadget_pattern(pattern)
        assert big.p == (4, 4)
        assert verify_process(gadget, lift_process_to_gadget(h, proc, pattern), big)
        assert is_weakly_saturated(gadget, big)


class TestBipartiteConstructions:

    def test_gk_example_counts(self):
        assert build_gk(4, 1, 3, 1).edge_count == 7
        assert build_gk(3, 2, 2, 0).edge_count == 5
        assert build_gk(4, 1, 2, 0).edge_count == 4

    def test_gk_degrees(self):
        g = build_gk(6, 2, 4, 1)
        rows = [sum(1 for e in g.edges() if e[0] == r) for r in range(1, 7)]
        # label 1 is complete, label 2 is the block, the rest have degree q-1
        assert rows == [6, 2, 3, 3, 3, 3]

    @pytest.mark.parametrize("args", [(4, 3, 2, 0), (4, 1, 3, 3), (2, 1, 3, 0), (4, 1, 4, 2)])
    def test_gk_rejects_invalid(self, args):
        with pytest.raises(ConstructionError):
            build_gk(*args)

    def test_gk_edge_count_formula(self):
        for n in range(1, 7):
            for p in range(1, 5):
                for q in range(p, 5):
                    for k in range(q - p + 1):
                        try:
                            g = build_gk(n, p, q, k)
                        except ConstructionError:
                            continue
                        assert g.edge_count == gk_edge_count(n, p, q, k).value

    def test_extend_to_balanced(self):
        pattern = Pattern(n=3, p=(1, 2))
        g = build_g0(pattern)
        big, balanced = extend_to_balanced(g, pattern)
        assert balanced.p == (2, 2) and big.n == 4
        assert is_weakly_saturated(big, balanced)

    def test_extend_requires_bipartite(self):
        with pytest.raises(PatternError):
            extend_to_balanced(DPartiteGraph.empty(3, 2), Pattern(n=2, p=(1, 1, 2)))

    def test_contains_pattern(self):
        assert contains_pattern(DPartiteGraph.complete(2, 2), Pattern(n=2, p=(2, 2)))
        assert not contains_pattern(build_g0(Pattern(n=3, p=(2, 2))), Pattern(n=3, p=(3, 3)))
