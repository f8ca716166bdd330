from fractions import Fraction
from random import Random

import pytest

from weaksub import (
    CapExceeded,
    GroundSet,
    Subset,
    brute_force_cardinality,
    brute_force_matroid,
    greedy_cardinality,
    local_search_matroid,
)
from weaksub.bounds import greedy_ratio, ls_bound
from weaksub.matroid import Matroid, random_partition_matroid
from weaksub.zoo import (
    DistanceMatrix,
    SegmentationMatrix,
    complement,
    linear,
    linear_combination,
    max_cut,
    metric_dispersion,
    random_coverage,
    random_metric,
    random_segmentation,
    segmentation,
    star_counterexample,
)


class TestGreedy:
    def test_p_zero_returns_empty(self):
        f = metric_dispersion(random_metric(5, 1))
        res = greedy_cardinality(f, 0)
        assert res.selected.cardinality == 0
        assert res.value == 0
        assert res.trace == ()

    def test_modular_picks_top_weights(self):
        f = linear((5, 1, 9, 7, 3))
        res = greedy_cardinality(f, 3)
        assert set(res.selected.indices()) == {0, 2, 3}
        assert res.value == 21
        opt = brute_force_cardinality(f, 3)
        assert opt.value == res.value

    def test_tie_break_smallest_index(self):
        f = linear((2, 2, 2, 2))
        res = greedy_cardinality(f, 2)
        assert res.selected.indices() == (0, 1)
        assert [step[1] for step in res.trace] == [0, 1]

    def test_trace_values_non_decreasing(self):
        f = segmentation(random_segmentation(7, 4, 5))
        res = greedy_cardinality(f, 5)
        values = [v for _, _, v in res.trace]
        assert all(a <= b for a, b in zip(values, values[1:]))
        assert res.value == f.evaluate(res.selected)

    def test_p_out_of_range(self):
        f = linear((1, 2))
        with pytest.raises(ValueError):
            greedy_cardinality(f, 3)
        with pytest.raises(ValueError):
            greedy_cardinality(f, -1)

    def test_claims_are_enforced_when_present(self):
        cut = max_cut(star_counterexample(2))  # not monotone, claims say so
        with pytest.raises(ValueError):
            greedy_cardinality(cut, 2)
        # Claim-free functions are the caller's responsibility and run fine.
        bar = complement(linear((1, 2, 3)))
        assert greedy_cardinality(bar, 1).selected.cardinality == 1

    def test_ratio_respects_analytic_bound(self):
        f = metric_dispersion(random_metric(8, 12))
        res = greedy_cardinality(f, 3)
        opt = brute_force_cardinality(f, 3)
        assert opt.value >= res.value
        assert float(opt.value) <= greedy_ratio(3) * float(res.value)

    def test_determinism(self):
        f = metric_dispersion(random_metric(7, 33))
        a = greedy_cardinality(f, 4)
        b = greedy_cardinality(metric_dispersion(random_metric(7, 33)), 4)
        assert a == b


class TestLocalSearch:
    def test_modular_uniform_converges_to_top_elements(self):
        f = linear((5, 1, 9, 7, 3))
        m = Matroid.uniform(f.ground, 2)
        res = local_search_matroid(f, m)
        assert set(res.selected.indices()) == {2, 3}
        assert res.value == 16

    def test_result_is_a_basis_and_locally_optimal(self):
        f = metric_dispersion(random_metric(8, 21))
        m = Matroid.uniform(f.ground, 3)
        res = local_search_matroid(f, m, epsilon=0)
        mask = res.selected.mask
        assert res.selected.cardinality == m.rank
        for u in range(8):
            if mask >> u & 1:
                continue
            for v in range(8):
                if not mask >> v & 1:
                    continue
                swapped = (mask | 1 << u) & ~(1 << v)
                if m.is_independent_mask(swapped):
                    assert f.value(swapped) <= f.value(mask)

    def test_trace_strictly_increasing(self):
        f = metric_dispersion(random_metric(9, 2))
        m = random_partition_matroid(9, 3, 8)
        res = local_search_matroid(f, m, init=Subset.empty(f.ground))
        values = [v for _, _, v in res.trace]
        assert all(a < b for a, b in zip(values, values[1:]))
        assert res.iterations == len(res.trace) - 1

    def test_ratio_respects_analytic_bound(self):
        f = metric_dispersion(random_metric(8, 3))
        m = Matroid.uniform(f.ground, 3)
        res = local_search_matroid(f, m, epsilon=0)
        opt = brute_force_matroid(f, m)
        assert opt.value >= res.value
        assert float(opt.value) <= ls_bound(3) * float(res.value)

    def test_partition_constraint_respected(self):
        f = metric_dispersion(random_metric(8, 44))
        m = random_partition_matroid(8, 3, 45)
        res = local_search_matroid(f, m)
        assert m.is_independent(res.selected)
        assert res.selected.cardinality == m.rank

    def test_max_iters_truncates(self):
        f = metric_dispersion(random_metric(8, 6))
        m = Matroid.uniform(f.ground, 3)
        res = local_search_matroid(f, m, init=Subset.empty(f.ground), max_iters=1)
        assert res.iterations <= 1

    def test_dependent_init_rejected(self):
        f = metric_dispersion(random_metric(6, 7))
        m = Matroid.uniform(f.ground, 2)
        with pytest.raises(ValueError):
            local_search_matroid(f, m, init=Subset.from_indices(f.ground, (0, 1, 2)))

    def test_partial_init_extended_to_basis(self):
        f = metric_dispersion(random_metric(6, 8))
        m = Matroid.uniform(f.ground, 3)
        res = local_search_matroid(f, m, init=Subset.from_indices(f.ground, (5,)))
        assert res.selected.cardinality == 3

    def test_epsilon_threshold_semantics(self):
        f = metric_dispersion(random_metric(8, 51))
        m = Matroid.uniform(f.ground, 3)
        exact = local_search_matroid(f, m, epsilon=0)
        loose = local_search_matroid(f, m, epsilon=Fraction(1, 2))
        # A looser threshold can stop earlier but never later.
        assert loose.iterations <= exact.iterations
        assert loose.value <= exact.value

    def test_negative_epsilon_rejected(self):
        f = linear((1, 2, 3))
        with pytest.raises(ValueError):
            local_search_matroid(f, Matroid.uniform(f.ground, 1), epsilon=-1)

    def test_determinism(self):
        f = segmentation(random_segmentation(8, 5, 61))
        m = random_partition_matroid(8, 3, 62)
        a = local_search_matroid(f, m)
        b = local_search_matroid(f, m)
        assert a == b


class TestBruteForceCardinality:
    def test_full_size_returns_universe_value(self):
        f = segmentation(random_segmentation(6, 3, 71))
        opt = brute_force_cardinality(f, 6)
        assert opt.value == f.value(f.ground.full_mask)

    def test_best_singleton(self):
        f = linear((2, 9, 4))
        opt = brute_force_cardinality(f, 1)
        assert opt.optimum.indices() == (1,)
        assert opt.value == 9

    def test_unit_metric_all_k_sets_equal(self):
        f = metric_dispersion(DistanceMatrix.unit(6))
        for k in (2, 3, 4):
            opt = brute_force_cardinality(f, k, exact_size=True)
            assert opt.value == k * (k - 1) // 2

    def test_cap(self):
        f = linear((1,) * 25)
        with pytest.raises(CapExceeded):
            brute_force_cardinality(f, 3)

    def test_enumeration_counts(self):
        f = linear((1, 2, 3, 4))
        assert brute_force_cardinality(f, 2).enumerated == 1 + 4 + 6
        assert brute_force_cardinality(f, 2, exact_size=True).enumerated == 6


class TestBruteForceMatroid:
    def test_uniform_equals_exact_size_cardinality(self):
        f = metric_dispersion(random_metric(7, 81))
        m = Matroid.uniform(f.ground, 3)
        a = brute_force_matroid(f, m)
        b = brute_force_cardinality(f, 3, exact_size=True)
        assert a.value == b.value

    def test_single_basis_matroid(self):
        g = GroundSet.of_size(4)
        m = Matroid.partition(g, [[0], [1], [2, 3]], [1, 1, 0])
        f = linear((1, 2, 3, 4))
        opt = brute_force_matroid(f, m)
        assert opt.optimum.indices() == (0, 1)

    def test_dominates_local_search_on_random_instances(self):
        rng = Random(13)
        for _ in range(10):
            f = metric_dispersion(random_metric(8, rng.randrange(10**6)))
            m = random_partition_matroid(8, 3, rng.randrange(10**6))
            opt = brute_force_matroid(f, m)
            res = local_search_matroid(f, m)
            assert opt.value >= res.value

    def test_ground_mismatch(self):
        f = linear((1, 2, 3))
        m = Matroid.uniform(GroundSet.of_size(4), 2)
        with pytest.raises(ValueError):
            brute_force_matroid(f, m)


class TestCombinedObjectives:
    def test_msd_style_combination_under_both_solvers(self):
        quality = random_coverage(8, 90)
        f = linear_combination(
            [quality, metric_dispersion(random_metric(8, 91))], [1, 1]
        )
        res_g = greedy_cardinality(f, 3)
        opt_g = brute_force_cardinality(f, 3)
        assert opt_g.value >= res_g.value
        assert float(opt_g.value) <= greedy_ratio(3) * float(res_g.value)

        m = Matroid.uniform(f.ground, 3)
        res_l = local_search_matroid(f, m)
        opt_l = brute_force_matroid(f, m)
        assert opt_l.value >= res_l.value
        assert float(opt_l.value) <= ls_bound(3) * float(res_l.value)
