from itertools import product

import pytest

from satlab.errors import ConstructionError, FamilyError, FormatError
from satlab.families import (
    FamilyPair,
    GroundSet,
    Theorem,
    build_extremal,
    families_from_document,
    families_to_document,
    saturation_to_families,
    set_weight,
    verify_conditions,
)
from satlab.formulas import q_enumerate
from satlab.hypergraph import DPartiteGraph, Pattern, SaturationProcess, build_g0, weight_process


def swapped(fp, i, j):
    """fp with pairs i and j (0-based) exchanged."""
    a, b = list(fp.A), list(fp.B)
    a[i], a[j] = a[j], a[i]
    b[i], b[j] = b[j], b[i]
    return FamilyPair(fp.ground, tuple(a), tuple(b), fp.caps_a, fp.caps_b)


class TestBuildExtremal:
    def test_two_parts(self):
        fp = build_extremal((1, 2), (1, 1))
        assert fp.h == 8
        assert fp.ground.part_sizes == (3, 3)
        assert fp.B[0] == frozenset({(1, 2), (2, 3)})
        assert fp.B[1] == frozenset({(1, 3), (2, 2)})
        assert [set_weight(s) for s in fp.B] == sorted((set_weight(s) for s in fp.B), reverse=True)
        assert frozenset({(1, 3), (2, 3)}) not in fp.B
        assert verify_conditions(fp)

    def test_single_part(self):
        fp = build_extremal((2,), (1,))
        assert list(fp.B) == [frozenset({(1, 3)}), frozenset({(1, 2)}), frozenset({(1, 1)})]
        assert list(fp.A) == [
            frozenset({(1, 1), (1, 2)}),
            frozenset({(1, 1), (1, 3)}),
            frozenset({(1, 2), (1, 3)}),
        ]

    def test_zero_caps(self):
        fp = build_extremal((0, 0), (2, 1))
        assert fp.h == 1
        assert fp.B[0] == frozenset({(1, 1), (1, 2), (2, 1)})
        assert fp.A[0] == frozenset()
        assert verify_conditions(fp)

    def test_equal_unit_caps(self):
        fp = build_extremal((1, 1), (1, 1))
        assert fp.h == 4
        assert verify_conditions(fp, Theorem.NEW)
        assert verify_conditions(fp, Theorem.ALON)

    def test_grid_two_parts(self):
        for a in product(range(4), repeat=2):
            for b in product(range(4), repeat=2):
                fp = build_extremal(a, b)
                assert fp.h == q_enumerate(a, b).value
                assert verify_conditions(fp), (a, b)

    @pytest.mark.slow
    def test_grid_three_parts(self):
        for a in product(range(4), repeat=3):
            for b in product(range(4), repeat=3):
                fp = build_extremal(a, b)
                assert fp.h == q_enumerate(a, b).value
                assert verify_conditions(fp), (a, b)

    def test_three_parts_sample(self, rng):
        for _ in range(15):
            a = tuple(rng.randint(0, 2) for _ in range(3))
            b = tuple(rng.randint(0, 2) for _ in range(3))
            fp = build_extremal(a, b)
            assert fp.h == q_enumerate(a, b).value
            assert verify_conditions(fp), (a, b)

    @pytest.mark.parametrize("a,b", [((1, 2), (1, 1)), ((2, 0), (1, 2)), ((1, 2, 0), (1, 1, 1))])
    def test_disjoint_pairs_follow_weight(self, a, b):
        fp = build_extremal(a, b)
        for i in range(fp.h):
            for k in range(fp.h):
                if i != k and not fp.A[i] & fp.B[k]:
                    assert set_weight(fp.B[k]) > set_weight(fp.B[i])


class TestVerifyConditions:
    def test_condition_one(self):
        x = frozenset({(1, 1)})
        fp = FamilyPair(GroundSet((1,)), (x,), (x,), (1,), (1,))
        verdict = verify_conditions(fp)
        assert not verdict
        assert (verdict.condition, verdict.i) == (1, 1)

    def test_out_of_order_pair_breaks_skew(self):
        fp = build_extremal((1, 2), (1, 1))
        found = [
            (i, j) for i in range(fp.h) for j in range(i + 1, fp.h)
            if not fp.A[j] & fp.B[i]
        ]
        assert found
        i, j = found[0]
        assert set_weight(fp.B[i]) != set_weight(fp.B[j])
        verdict = verify_conditions(swapped(fp, i, j))
        assert verdict.condition == 2
        assert verdict.i <= i + 1

    def test_condition_three(self):
        fp = FamilyPair(
            GroundSet((2, 2)),
            (frozenset(),),
            (frozenset({(1, 1), (1, 2)}),),
            (1, 1),
            (1, 1),
        )
        verdict = verify_conditions(fp)
        assert (verdict.condition, verdict.i, verdict.j) == (3, 1, 1)

    def test_permuted_caps_only_pass_new(self):
        fp = FamilyPair(
            GroundSet((3, 3)),
            (frozenset({(1, 1), (1, 2)}),),
            (frozenset({(2, 1)}),),
            (0, 2),
            (1, 1),
        )
        assert verify_conditions(fp, Theorem.NEW)
        verdict = verify_conditions(fp, Theorem.ALON)
        assert (verdict.condition, verdict.i, verdict.j) == (4, 1, 1)
        fp_too_big = FamilyPair(fp.ground, (frozenset({(1, 1), (1, 2), (2, 2)}),), fp.B, (0, 2), (1, 1))
        assert verify_conditions(fp_too_big, "new").condition == 4

    def test_non_skew_flag(self):
        fp = build_extremal((2,), (1,))
        assert verify_conditions(fp)
        strict = build_extremal((1, 2), (1, 1))
        assert not verify_conditions(strict, non_skew=True)
        assert verify_conditions(strict, non_skew=False)

    def test_alon_implies_new(self, rng):
        ground = GroundSet((3, 3))
        universe = [(j, x) for j in (1, 2) for x in (1, 2, 3)]
        for _ in range(300):
            h = rng.randint(0, 4)
            family_a = tuple(frozenset(e for e in universe if rng.random() < 0.3) for _ in range(h))
            family_b = tuple(frozenset(e for e in universe if rng.random() < 0.3) for _ in range(h))
            caps_a = (rng.randint(0, 3), rng.randint(0, 3))
            caps_b = (rng.randint(0, 3), rng.randint(0, 3))
            fp = FamilyPair(ground, family_a, family_b, caps_a, caps_b)
            if verify_conditions(fp, Theorem.ALON):
                assert verify_conditions(fp, Theorem.NEW)

    def test_elements_must_fit_ground(self):
        with pytest.raises(FamilyError):
            FamilyPair(GroundSet((2,)), (frozenset({(1, 3)}),), (frozenset(),), (1,), (1,))
        with pytest.raises(FamilyError):
            FamilyPair(GroundSet((2,)), (frozenset(),), (), (1,), (1,))
        with pytest.raises(FamilyError):
            FamilyPair(GroundSet((2, 2)), (), (), (1,), (1, 1))


class TestSaturationToFamilies:
    def test_square_pattern_is_tight(self):
        pattern = Pattern(n=3, p=(2, 2))
        fp = saturation_to_families(build_g0(pattern), weight_process(pattern), pattern)
        assert fp.h == 4
        assert fp.caps_a == (1, 1)
        assert fp.caps_b == (1, 1)
        assert verify_conditions(fp)
        assert fp.h <= q_enumerate(fp.caps_a, fp.caps_b).value == 4

    def test_unbalanced_pattern_is_tight(self):
        pattern = Pattern(n=2, p=(1, 2))
        fp = saturation_to_families(build_g0(pattern), weight_process(pattern), pattern)
        assert fp.h == 3
        assert fp.caps_a == (1, 0)
        assert verify_conditions(fp)
        assert q_enumerate(fp.caps_a, fp.caps_b).value == 3

    def test_complete_graph_gives_empty_families(self):
        pattern = Pattern(n=3, p=(2, 2))
        fp = saturation_to_families(DPartiteGraph.complete(2, 3), SaturationProcess(), pattern)
        assert fp.h == 0
        assert verify_conditions(fp)

    def test_lower_bound_on_every_small_pattern(self):
        for d, n in [(2, 3), (2, 4), (3, 3)]:
            for p in product(range(1, n + 1), repeat=d):
                if list(p) != sorted(p):
                    continue
                pattern = Pattern(n=n, p=p)
                g = build_g0(pattern)
                fp = saturation_to_families(g, weight_process(pattern), pattern)
                assert verify_conditions(fp), pattern
                assert g.edge_count >= n ** d - q_enumerate(fp.caps_a, fp.caps_b).value

    def test_rejects_invalid_process(self):
        pattern = Pattern(n=3, p=(2, 3))
        with pytest.raises(ConstructionError):
            saturation_to_families(build_g0(pattern), weight_process(pattern).reversed(), pattern)


class TestDocuments:
    def test_roundtrip(self):
        fp = build_extremal((1, 2), (1, 1))
        text = families_to_document(fp)
        assert families_from_document(text) == fp
        assert text.endswith("\n")

    def test_rejects_mismatched_caps(self):
        text = '{"parts": [2, 2], "caps_a": [1], "caps_b": [1, 1], "pairs": []}'
        with pytest.raises(FamilyError):
            families_from_document(text)

    def test_rejects_elements_outside_parts(self):
        text = '{"parts": [2], "caps_a": [1], "caps_b": [1], "pairs": [{"A": [[1, 3]], "B": []}]}'
        with pytest.raises(FamilyError):
            families_from_document(text)

    def test_rejects_bad_json(self):
        with pytest.raises(FormatError):
            families_from_document('{"parts": [2]')
