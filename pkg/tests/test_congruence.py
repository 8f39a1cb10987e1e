import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import grid_fit_exists, random_normal_fan_2d, random_polygon_pair
from herisson import builders
from herisson.congruence import (
    CauchyStatus,
    CongruenceStatus,
    can_translate_inside,
    cauchy_verdict,
    congruent_and_parallel,
    edge_labeling,
    label_parallel_faces,
    sign_changes,
)
from herisson.errors import NotComparable, NotSameClass
from herisson.fan import dual_complex
from herisson.geometry import reconstruct


class TestSignChanges:
    def test_alternating(self):
        assert sign_changes([1, -1, 1, -1]) == 4

    def test_zeros_skipped_wrap_counted(self):
        assert sign_changes([1, 0, -1, 0]) == 2

    def test_all_zero(self):
        assert sign_changes([0, 0, 0]) == 0

    def test_constant(self):
        assert sign_changes([1, 1, 1, 0, 1]) == 0

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.sampled_from([-1, 0, 1]), min_size=1, max_size=12))
    def test_always_even(self, labels):
        assert sign_changes(labels) % 2 == 0


class TestCauchyVerdict:
    def test_all_zero(self, cube):
        dc = dual_complex(cube.fan)
        verdict = cauchy_verdict(dc, {e: 0 for e in dc.edges})
        assert verdict.status is CauchyStatus.ALL_ZERO

    def test_constant_plus_one_gives_witness(self, tetra):
        dc = dual_complex(tetra.fan)
        verdict = cauchy_verdict(dc, {e: 1 for e in dc.edges})
        assert verdict.status is CauchyStatus.WITNESS
        assert verdict.index == 0

    def test_random_labelings_never_violate(self, cube, rng):
        dc = dual_complex(cube.fan)
        edges = list(dc.edges)
        for _ in range(1000):
            labels = dict(zip(edges, rng.integers(-1, 2, len(edges))))
            verdict = cauchy_verdict(dc, labels)
            assert verdict.status is not CauchyStatus.VIOLATES_LEMMA
            if verdict.status is CauchyStatus.WITNESS:
                assert verdict.index <= 2

    def test_missing_label_rejected(self, tetra):
        dc = dual_complex(tetra.fan)
        with pytest.raises(ValueError):
            cauchy_verdict(dc, {})


SQ1 = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


class TestCanTranslateInside:
    def test_unit_square_in_double_square(self):
        assert can_translate_inside(SQ1, 2.0 * SQ1)

    def test_congruent_translate_is_false(self):
        assert not can_translate_inside(SQ1, SQ1 + np.array([3.0, -2.0]))

    def test_rectangle_1x3_in_square_2x2(self):
        rect = np.array([[0, 0], [1, 0], [1, 3], [0, 3]], dtype=float)
        square = 2.0 * SQ1
        assert not can_translate_inside(rect, square)
        assert not grid_fit_exists(rect, square)  # brute-force confirmation

    def test_grid_oracle_agrees(self, rng):
        for _ in range(20):
            angles = random_normal_fan_2d(rng)
            p, q = random_polygon_pair(rng, angles)
            p = 0.55 * p
            assert can_translate_inside(p, q) == grid_fit_exists(p, q)


class TestLabelParallelFaces:
    def test_congruent_triangles_all_zero(self):
        tri = np.array([[0.0, 0.0], [2.0, 0.0], [0.4, 1.3]])
        lab = label_parallel_faces(tri, tri + np.array([5.0, 7.0]))
        assert lab.all_zero
        assert lab.index == 0

    def test_swapped_rectangles(self):
        r13 = np.array([[0, 0], [1, 0], [1, 3], [0, 3]], dtype=float)
        r31 = np.array([[0, 0], [3, 0], [3, 1], [0, 1]], dtype=float)
        lab = label_parallel_faces(r13, r31)
        assert lab.index1 == 4 and lab.index2 == 4
        assert sorted(lab.edge_labels(1)) == [-1, -1, 1, 1]
        # cyclically alternating +1/-1 around either polygon
        edges = list(lab.edge_labels(1))
        assert all(edges[i] != edges[(i + 1) % 4] for i in range(4))

    def test_not_comparable(self):
        with pytest.raises(NotComparable):
            label_parallel_faces(SQ1, 3.0 * SQ1)

    def test_same_fan_pairs_zero_or_at_least_four(self, rng):
        for _ in range(60):
            angles = random_normal_fan_2d(rng)
            p, q = random_polygon_pair(rng, angles)
            if can_translate_inside(p, q) or can_translate_inside(q, p):
                continue
            lab = label_parallel_faces(p, q)
            if lab.all_zero:
                assert lab.index1 == 0
            else:
                assert lab.index1 >= 4 and lab.index2 >= 4
            assert lab.index1 != 2 and lab.index2 != 2

    def test_antisymmetry(self, rng):
        for _ in range(20):
            angles = random_normal_fan_2d(rng)
            p, q = random_polygon_pair(rng, angles)
            if can_translate_inside(p, q) or can_translate_inside(q, p):
                continue
            lab = label_parallel_faces(p, q)
            rev = label_parallel_faces(q, p)
            assert lab.labels1 == rev.labels2
            assert lab.labels2 == rev.labels1

    def test_mixed_fans_vertex_rules(self):
        # square versus diamond: every edge faces a vertex, rules (ii)/(iii)
        diamond = np.array([[1.5, 0.0], [0.0, 1.5], [-1.5, 0.0], [0.0, -1.5]])
        square = 2.0 * SQ1 - 1.0
        lab = label_parallel_faces(square, diamond)
        assert all(e == 1 for e in lab.edge_labels(1))
        assert all(e == 1 for e in lab.edge_labels(2))
        assert lab.index1 >= 4 and lab.index2 >= 4


class TestEdgeLabeling:
    def test_equal_herissons_all_zero(self, bowtie):
        labels = edge_labeling(bowtie, bowtie.translated([0.3, -0.4, 0.9]))
        assert all(v == 0 for v in labels.values())

    def test_antisymmetric(self):
        a = builders.reflected_truncated_tetrahedron(0.35)
        b = builders.reflected_truncated_tetrahedron(0.65)
        fwd = edge_labeling(a, b)
        bwd = edge_labeling(b, a)
        assert set(fwd) == set(bwd)
        assert all(fwd[arc] == -bwd[arc] for arc in fwd)
        assert set(fwd) == set(a.fan.arcs)

    def test_feeds_cauchy_verdict(self, cube):
        bigger = builders.box(4.0, 2.0, 2.0)
        labels = edge_labeling(bigger, cube)
        verdict = cauchy_verdict(dual_complex(cube.fan), labels)
        assert verdict.status is not CauchyStatus.VIOLATES_LEMMA


class TestCongruentAndParallel:
    def test_translate_recovered(self, bowtie, rng):
        for _ in range(5):
            c = rng.uniform(-4, 4, 3)
            verdict = congruent_and_parallel(bowtie, bowtie.translated(c))
            assert verdict.status is CongruenceStatus.CONGRUENT
            assert np.max(np.abs(verdict.translation - c)) <= 1e-9

    def test_nested_cubes_hypothesis_failure(self, cube):
        big = builders.box(4.0, 4.0, 4.0)
        verdict = congruent_and_parallel(cube, big)
        assert verdict.status is CongruenceStatus.HYPOTHESIS_FAILURE

    def test_different_waisted_bodies_not_congruent(self):
        # different elongation: some lateral trapezoid nests inside its mate,
        # so the uniqueness hypothesis fails and congruence is refused
        verdict = congruent_and_parallel(
            builders.waisted_bitetrahedron(1), builders.waisted_bitetrahedron(2)
        )
        assert not verdict.is_congruent
        assert verdict.status in (
            CongruenceStatus.HYPOTHESIS_FAILURE,
            CongruenceStatus.DISTINCT,
        )
        assert verdict.face is not None

    def test_not_same_class_equipment(self, cube, tetra):
        with pytest.raises(NotSameClass):
            congruent_and_parallel(cube, tetra)

    def test_not_same_class_signs(self, cube):
        mixed = reconstruct(cube.fan, np.array([0.5, 0.5, -1.0, 0.5, 1.0, 1.0]))
        with pytest.raises(NotSameClass):
            congruent_and_parallel(cube, mixed)

    def test_self_congruent_fixture_sweep(self, cube, tetra, bowtie, waisted, tiling):
        for body in (cube, tetra, bowtie, waisted, tiling):
            verdict = congruent_and_parallel(body, body.translated([1.0, 2.0, 3.0]))
            assert verdict.status is CongruenceStatus.CONGRUENT
            assert np.allclose(verdict.translation, [1.0, 2.0, 3.0], atol=1e-9)
