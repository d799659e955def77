import random
from fractions import Fraction

import pytest

from ffdist.characters import character_table
from ffdist.cyclotomic import Cyclotomic
from ffdist.geometry import (IndexSubset, SphereSpec, a_term, b_term, k_norm,
                             lemma31_sum, slice_set, sphere_ft, sphere_points,
                             stratum, stratum_sum_brute)
from ffdist.gf import (Point, enumerate_vectors, factor_prime_power,
                       make_field, point_from_index)


def setup_q(q):
    f = make_field(*factor_prime_power(q))
    return f, character_table(f)


class TestKNorm:
    def test_no_zeros(self):
        f = make_field(3)
        assert k_norm(Point(f, (1, 2)), 1) == f.element(2)

    def test_deformed_to_zero(self):
        f = make_field(3)
        assert k_norm(Point(f, (0, 2)), 1) == f.zero

    def test_within_tolerance(self):
        f = make_field(3)
        assert k_norm(Point(f, (0, 2)), 2) == f.element(1)

    def test_k_equals_d_is_plain_norm(self):
        f = make_field(5)
        for x in enumerate_vectors(f, 2):
            assert k_norm(x, 2) == x.norm()

    def test_k_out_of_range(self):
        f = make_field(3)
        with pytest.raises(ValueError):
            k_norm(Point(f, (1, 2)), 3)
        with pytest.raises(ValueError):
            k_norm(Point(f, (1, 2)), 0)


class TestStrataAndSlices:
    def test_stratum_sizes(self):
        f = make_field(3)
        assert len(stratum(f, 2, 0)) == 4
        assert len(stratum(f, 2, 1)) == 4
        assert [x.idx for x in stratum(f, 2, 2)] == [(0, 0)]

    def test_stratum_counts_formula(self):
        import math
        f = make_field(5)
        for d in (2, 3):
            for alpha in range(d + 1):
                assert len(stratum(f, d, alpha)) == math.comb(d, alpha) * 4 ** (d - alpha)

    def test_slice_example(self):
        f = make_field(3)
        F = slice_set(f, 2, IndexSubset(2, {1}))
        assert [x.idx for x in F] == [(1, 0), (2, 0)]

    def test_slices_partition(self):
        from itertools import combinations
        f = make_field(3)
        d = 2
        seen = set()
        for size in range(d + 1):
            for members in combinations(range(1, d + 1), size):
                F = slice_set(f, d, IndexSubset(d, members))
                assert len(F) == 2 ** len(members)
                for x in F:
                    assert x.idx not in seen
                    seen.add(x.idx)
        assert len(seen) == 9

    def test_alpha_out_of_range(self):
        f = make_field(3)
        with pytest.raises(ValueError):
            stratum(f, 2, 3)


class TestSpheres:
    def test_circle_q3(self):
        f = make_field(3)
        pts = sphere_points(f, 2, 2, f.element(1))
        assert {x.idx for x in pts} == {(0, 1), (0, 2), (1, 0), (2, 0)}

    def test_empty_deformed_sphere(self):
        f = make_field(3)
        assert len(sphere_points(f, 2, 1, f.element(1))) == 0

    def test_degenerate_radius_zero(self):
        f = make_field(3)
        assert len(sphere_points(f, 2, 1, f.zero)) == 5

    @pytest.mark.parametrize("q,d", [(3, 2), (3, 3), (5, 2), (9, 2)])
    def test_spheres_partition_space(self, q, d):
        f, _ = setup_q(q)
        for k in range(1, d + 1):
            total = sum(len(sphere_points(f, d, k, t)) for t in f.elements)
            assert total == q**d

    @pytest.mark.parametrize("q,d", [(3, 3), (5, 2)])
    def test_sphere_monotone_in_k(self, q, d):
        f, _ = setup_q(q)
        for t in f.elements[1:]:
            for k in range(1, d):
                small = set(x.idx for x in sphere_points(f, d, k, t))
                large = set(x.idx for x in sphere_points(f, d, k + 1, t))
                assert small <= large


class TestStratumSums:
    def test_hand_example_s1(self):
        f, table = setup_q(3)
        m = Point(f, (0, 0))
        closed = lemma31_sum(table, 2, 0, f.one, m)
        # (G_1 - 1)^2 = 4 zeta^2, and every point of N_0 has norm 2
        assert closed == 4 * Cyclotomic.root(3, 2)
        assert closed == stratum_sum_brute(table, 2, 0, f.one, m)

    def test_origin_stratum(self):
        f, table = setup_q(3)
        for m in enumerate_vectors(f, 2):
            assert lemma31_sum(table, 2, 2, f.one, m) == 1

    def test_s_zero_hand_example(self):
        f, table = setup_q(3)
        m = Point(f, (1, 1))
        assert lemma31_sum(table, 2, 1, f.zero, m) == -2
        assert stratum_sum_brute(table, 2, 1, f.zero, m) == -2

    @pytest.mark.parametrize("q,d", [(3, 2), (5, 2)])
    def test_exhaustive_small(self, q, d):
        f, table = setup_q(q)
        for alpha in range(d + 1):
            for s in f.elements:
                for m in enumerate_vectors(f, d):
                    assert lemma31_sum(table, d, alpha, s, m) == \
                        stratum_sum_brute(table, d, alpha, s, m)

    def test_seeded_larger_field(self):
        f, table = setup_q(9)
        rng = random.Random(99)
        for _ in range(10):
            s = f.element(rng.randrange(f.q))
            m = point_from_index(f, 2, rng.randrange(f.q**2))
            for alpha in range(3):
                assert lemma31_sum(table, 2, alpha, s, m) == \
                    stratum_sum_brute(table, 2, alpha, s, m)


class TestSphereTransform:
    def test_b_term_examples(self):
        for q in (3, 5, 7):
            f, _ = setup_q(q)
            assert b_term(f, Point(f, (0, 0)), 1) == (q - 1) ** 2
            assert b_term(f, Point(f, (1, 1)), 1) == 1
            assert b_term(f, Point(f, (0, 0)), 2) == (q - 1) ** 2 + 2 * (q - 1)

    def test_a_term_rejects_zero_radius(self):
        f, table = setup_q(3)
        with pytest.raises(ValueError):
            a_term(table, Point(f, (0, 0)), f.zero, 1)

    def test_closed_rejects_zero_radius(self):
        f, table = setup_q(3)
        with pytest.raises(ValueError):
            sphere_ft(table, Point(f, (0, 0)), SphereSpec(2, f.zero), "closed")

    def test_brute_dc_value(self):
        f, table = setup_q(3)
        m = Point(f, (0, 0))
        assert sphere_ft(table, m, SphereSpec(2, f.element(1)), "brute") == Fraction(4, 9)
        assert sphere_ft(table, m, SphereSpec(1, f.element(1)), "brute") == 0

    def test_closed_matches_brute_examples(self):
        f, table = setup_q(3)
        m = Point(f, (0, 0))
        for k in (1, 2):
            spec = SphereSpec(k, f.element(1))
            assert sphere_ft(table, m, spec, "closed") == sphere_ft(table, m, spec, "brute")

    def test_bad_mode(self):
        f, table = setup_q(3)
        with pytest.raises(ValueError):
            sphere_ft(table, Point(f, (0, 0)), SphereSpec(2, f.element(1)), "fast")

    @pytest.mark.parametrize("q,d", [(3, 2), (3, 3), (5, 2)])
    def test_closed_equals_brute_exhaustive(self, q, d):
        f, table = setup_q(q)
        for k in range(1, d + 1):
            for t in f.elements[1:]:
                spec = SphereSpec(k, t)
                for m in enumerate_vectors(f, d):
                    assert sphere_ft(table, m, spec, "closed") == \
                        sphere_ft(table, m, spec, "brute")

    def test_closed_consistent_with_transform_definition(self):
        # q^{-d-1}(A + B) against the generic DFT of the sphere indicator
        from ffdist.fourier import dft_indicator
        f, table = setup_q(5)
        spec = SphereSpec(2, f.element(2))
        pts = sphere_points(f, 2, 2, f.element(2))
        ft = dft_indicator(pts)
        for m in enumerate_vectors(f, 2):
            assert sphere_ft(table, m, spec, "closed") == ft[m]
