import math

import numpy as np
import pytest

from conftest import random_front, square_front
from pfkcenter import (
    IntervalCluster,
    InternalConsistencyError,
    OpStats,
    Variant,
    backtrack_min_index,
    build_front,
    cost,
    dp_first_line,
    dp_line_entry,
    solve,
    solve_one_center,
)
from pfkcenter.dp import opt_sq_by_k
from pfkcenter.oracle import (
    brute_force_all_partitions,
    brute_force_intervals,
)


def full_scan_entry(front, prev, i, variant):
    """Independent O(i) evaluation of one line entry."""
    return min(
        max(float(prev[s - 1]), cost(front, (s, i), variant).radius_sq)
        for s in range(1, i + 1)
    )


class TestFirstLine:
    def test_continuous_square_front(self):
        line = dp_first_line(square_front(), Variant.CONTINUOUS)
        assert line.values.tolist() == [0.0, 0.5, 2.0, 4.5]

    def test_discrete_square_front(self):
        line = dp_first_line(square_front(), Variant.DISCRETE)
        assert line.values.tolist() == [0.0, 2.0, 2.0, 8.0]

    def test_first_entry_is_zero(self):
        rng = np.random.default_rng(0)
        f = random_front(rng, 17)
        for variant in Variant:
            assert dp_first_line(f, variant).values[0] == 0.0

    def test_matches_prefix_costs(self):
        rng = np.random.default_rng(1)
        f = random_front(rng, 60)
        for variant in Variant:
            line = dp_first_line(f, variant)
            for i in range(60):
                assert line.values[i] == cost(f, (0, i), variant).radius_sq

    def test_non_decreasing(self):
        rng = np.random.default_rng(2)
        for _ in range(5):
            f = random_front(rng, int(rng.integers(1, 120)))
            for variant in Variant:
                v = dp_first_line(f, variant).values
                assert np.all(np.diff(v) >= 0)


class TestLineEntry:
    def test_square_front_k2(self):
        f = square_front()
        prev = dp_first_line(f, Variant.CONTINUOUS)
        assert dp_line_entry(f, prev, 3, Variant.CONTINUOUS) == 0.5
        prev = dp_first_line(f, Variant.DISCRETE)
        assert dp_line_entry(f, prev, 3, Variant.DISCRETE) == 2.0

    def test_i1_is_free(self):
        f = square_front()
        for variant in Variant:
            prev = dp_first_line(f, variant)
            assert dp_line_entry(f, prev, 1, variant) == 0.0

    def test_out_of_range(self):
        f = square_front()
        prev = dp_first_line(f, Variant.CONTINUOUS)
        with pytest.raises(ValueError):
            dp_line_entry(f, prev, 0, Variant.CONTINUOUS)
        with pytest.raises(ValueError):
            dp_line_entry(f, prev, 4, Variant.CONTINUOUS)

    def test_equals_full_scan(self):
        rng = np.random.default_rng(3)
        for _ in range(6):
            n = int(rng.integers(2, 81))
            f = random_front(rng, n)
            for variant in Variant:
                prev = dp_first_line(f, variant)
                for k in (2, 3):
                    curr = [0.0] + [
                        dp_line_entry(f, prev, i, variant) for i in range(1, n)
                    ]
                    for i in range(1, n):
                        assert curr[i] == full_scan_entry(f, prev.values, i, variant)
                    prev = type(prev)(k, np.asarray(curr))

    def test_last_cluster_candidates_unimodal(self):
        # g(s) = max(prev[s-1], cost([s, i])) is decreasing then increasing
        rng = np.random.default_rng(4)
        for _ in range(4):
            n = int(rng.integers(3, 81))
            f = random_front(rng, n)
            for variant in Variant:
                prev = dp_first_line(f, variant).values
                i = n - 1
                g = [
                    max(float(prev[s - 1]), cost(f, (s, i), variant).radius_sq)
                    for s in range(1, i + 1)
                ]
                diffs = [b - a for a, b in zip(g, g[1:])]
                switched = False
                for d in diffs:
                    if not switched and d > 0:
                        switched = True
                    elif switched:
                        assert d >= 0


class TestSolveOneCenter:
    def test_continuous_pair(self):
        f = build_front([(0, 1), (1, 0)])
        s = solve_one_center(f, Variant.CONTINUOUS)
        assert s.opt_radius == math.sqrt(2) / 2

    def test_discrete_three_points(self):
        f = build_front([(0, 2), (1, 1), (2, 0)])
        s = solve_one_center(f, Variant.DISCRETE)
        assert s.opt_radius == math.sqrt(2)
        assert s.centers[0].center == (1.0, 1.0)

    def test_singleton_front(self):
        f = build_front([(4, 2)])
        for variant in Variant:
            assert solve_one_center(f, variant).opt_radius == 0.0


class TestSolve:
    def test_square_front_continuous(self):
        s = solve(square_front(), 2, Variant.CONTINUOUS)
        assert s.opt_radius == math.sqrt(2) / 2
        assert [tuple(c) for c in s.clusters] == [(0, 1), (2, 3)]

    def test_square_front_discrete(self):
        s = solve(square_front(), 2, Variant.DISCRETE)
        assert s.opt_radius == math.sqrt(2)
        assert [tuple(c) for c in s.clusters] == [(0, 0), (1, 3)]

    def test_k_at_least_n_gives_singletons(self):
        f = square_front()
        for k in (4, 7):
            for variant in Variant:
                s = solve(f, k, variant)
                assert s.opt_radius == 0.0
                assert s.effective_k == 4
                assert all(c.size == 1 for c in s.clusters)

    def test_k1_matches_one_center(self):
        rng = np.random.default_rng(5)
        f = random_front(rng, 33)
        for variant in Variant:
            assert (
                solve(f, 1, variant).opt_radius_sq
                == solve_one_center(f, variant).opt_radius_sq
            )

    def test_n1_any_k(self):
        f = build_front([(0, 0)])
        for k in (1, 2, 9):
            s = solve(f, k, Variant.DISCRETE)
            assert s.opt_radius == 0.0 and s.effective_k == 1

    def test_k0_rejected(self):
        with pytest.raises(ValueError):
            solve(square_front(), 0, Variant.CONTINUOUS)

    def test_max_cluster_cost_equals_optimum(self):
        rng = np.random.default_rng(6)
        for _ in range(10):
            n = int(rng.integers(2, 60))
            f = random_front(rng, n)
            k = int(rng.integers(1, n + 1))
            for variant in Variant:
                s = solve(f, k, variant)
                per = [cost(f, c, variant).radius_sq for c in s.clusters]
                assert max(per) == s.opt_radius_sq
                assert all(v <= s.opt_radius_sq for v in per)

    def test_partition_is_contiguous(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            n = int(rng.integers(1, 60))
            f = random_front(rng, n)
            k = int(rng.integers(1, 8))
            s = solve(f, k, Variant.DISCRETE)
            assert s.clusters[0].lo == 0
            assert s.clusters[-1].hi == n - 1
            for a, b in zip(s.clusters, s.clusters[1:]):
                assert a.hi + 1 == b.lo

    def test_workers_bit_identical(self):
        rng = np.random.default_rng(8)
        f = random_front(rng, 500)
        for variant in Variant:
            base = solve(f, 4, variant, workers=1)
            for w in (2, 3, 7):
                par = solve(f, 4, variant, workers=w)
                assert par.opt_radius_sq == base.opt_radius_sq
                assert par.clusters == base.clusters


class TestAgainstOracles:
    def test_interval_brute_force_exact(self):
        rng = np.random.default_rng(9)
        for _ in range(120):
            n = int(rng.integers(1, 15))
            f = random_front(rng, n)
            k = int(rng.integers(1, min(5, n) + 1))
            for variant in Variant:
                s = solve(f, k, variant)
                o = brute_force_intervals(f, k, variant)
                assert s.opt_radius_sq == o.opt_radius_sq

    def test_all_set_partitions(self):
        # interval clusters are enough even against arbitrary partitions
        rng = np.random.default_rng(10)
        for _ in range(40):
            n = int(rng.integers(2, 10))
            f = random_front(rng, n)
            k = int(rng.integers(1, min(4, n) + 1))
            for variant in Variant:
                s = solve(f, k, variant)
                o_sq = brute_force_all_partitions(f, k, variant)
                assert s.opt_radius == pytest.approx(
                    math.sqrt(o_sq), rel=1e-9, abs=1e-12
                )
                if variant is Variant.DISCRETE:
                    assert s.opt_radius_sq == o_sq


class TestBacktrack:
    def test_square_front_continuous(self):
        cl = backtrack_min_index(square_front(), 2, 0.5, Variant.CONTINUOUS)
        assert [tuple(c) for c in cl] == [(0, 1), (2, 3)]

    def test_square_front_discrete(self):
        cl = backtrack_min_index(square_front(), 2, 2.0, Variant.DISCRETE)
        assert [tuple(c) for c in cl] == [(0, 0), (1, 3)]

    def test_k_equals_n(self):
        cl = backtrack_min_index(square_front(), 4, 0.0, Variant.DISCRETE)
        assert [c.size for c in cl] == [1, 1, 1, 1]

    def test_tie_can_strand_prefix_clusters(self):
        # equidistant staircase: the 2-cluster discrete optimum equals the
        # 1-cluster cost, so the greedy last cluster swallows everything
        f = build_front([(0, 2), (1, 1), (2, 0)])
        s = solve(f, 2, Variant.DISCRETE)
        assert s.opt_radius_sq == 2.0
        assert s.effective_k == 1
        assert [tuple(c) for c in s.clusters] == [(0, 2)]

    def test_infeasible_radius_raises(self):
        with pytest.raises(InternalConsistencyError):
            backtrack_min_index(square_front(), 2, 0.1, Variant.CONTINUOUS)

    def test_boundaries_are_lower_bounds(self):
        rng = np.random.default_rng(11)
        for _ in range(60):
            n = int(rng.integers(2, 13))
            f = random_front(rng, n)
            k = int(rng.integers(1, min(5, n) + 1))
            for variant in Variant:
                o = brute_force_intervals(f, k, variant)
                cl = backtrack_min_index(f, k, o.opt_radius_sq, variant)
                ends = [c.hi for c in cl[:-1]]
                ends = [-1] * (k - 1 - len(ends)) + ends  # stranded prefix
                for opt_ends in o.optimal_boundaries:
                    assert all(a <= b for a, b in zip(ends, opt_ends))


class TestInstrumentation:
    def test_two_lines_resident(self):
        rng = np.random.default_rng(12)
        f = random_front(rng, 300)
        s = solve(f, 5, Variant.DISCRETE)
        assert s.stats.peak_dp_lines == 2

    def test_per_line_budget(self):
        rng = np.random.default_rng(13)
        for n in (64, 500, 2000):
            f = random_front(rng, n)
            bound = 4 * n * math.ceil(math.log2(n))
            for variant in Variant:
                s = solve(f, 4, variant)
                assert s.stats.per_line_cost_evals
                assert max(s.stats.per_line_cost_evals) <= bound

    def test_discrete_search_budget(self):
        rng = np.random.default_rng(14)
        f = random_front(rng, 800)
        s = solve(f, 4, Variant.DISCRETE)
        assert s.stats.worst_search_slack >= 0

    def test_backtrack_eval_budget(self):
        rng = np.random.default_rng(15)
        n, k = 400, 6
        f = random_front(rng, n)
        for variant in Variant:
            s = solve(f, k, variant)
            assert s.stats.backtrack_cost_evals <= n + 2 * k


def test_column_monotone_and_matches_solve():
    rng = np.random.default_rng(16)
    for _ in range(6):
        n = int(rng.integers(2, 40))
        f = random_front(rng, n)
        for variant in Variant:
            stats = OpStats()
            sq = opt_sq_by_k(f, n + 2, variant, stats=stats)
            assert all(b <= a for a, b in zip(sq, sq[1:]))
            assert sq[n - 1] == 0.0
            for k in range(1, n + 2):
                assert sq[k - 1] == solve(f, k, variant).opt_radius_sq


def test_dp_rows_non_decreasing_explicitly():
    rng = np.random.default_rng(17)
    f = random_front(rng, 120)
    for variant in Variant:
        prev = dp_first_line(f, variant)
        for k in (2, 3, 4):
            vals = np.array(
                [0.0] + [dp_line_entry(f, prev, i, variant) for i in range(1, 120)]
            )
            assert np.all(np.diff(vals) >= 0)
            prev = type(prev)(k, vals)
