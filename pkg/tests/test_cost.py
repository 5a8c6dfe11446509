import math

import numpy as np
import pytest

from conftest import random_front, square_front
from pfkcenter import (
    InvalidIntervalError,
    OpStats,
    Variant,
    build_front,
    continuous_cost,
    cost,
    discrete_cost,
    distance_sq,
    endpoint_max_sq,
)
from pfkcenter.cost import _discrete_values_batch, interval_cost_sq_batch
from pfkcenter.oracle import exact_meb, naive_discrete_cost


class TestContinuousCost:
    def test_two_points(self):
        f = build_front([(0, 1), (1, 0)])
        res = continuous_cost(f, (0, 1))
        assert res.radius == math.sqrt(2) / 2
        assert res.center == (0.5, 0.5)
        assert res.center_index is None

    def test_singleton(self):
        f = square_front()
        res = continuous_cost(f, (2, 2))
        assert res.radius == 0.0
        assert res.center == (2.0, 1.0)

    def test_whole_square_front_matches_enclosing_ball(self):
        f = square_front()
        res = continuous_cost(f, (0, 3))
        assert res.radius_sq == 4.5  # (sq of) half of sqrt(18)
        assert res.center == (1.5, 1.5)
        # max distance from the midpoint to every member equals the radius
        worst = max(distance_sq(res.center, p) for p in f)
        assert worst == pytest.approx(res.radius_sq, rel=1e-12)
        r_meb, c_meb = exact_meb(f.to_array())
        assert res.radius == pytest.approx(r_meb, rel=1e-9)
        assert c_meb == pytest.approx((1.5, 1.5), rel=1e-9)

    def test_invalid_interval(self):
        f = square_front()
        with pytest.raises(InvalidIntervalError):
            continuous_cost(f, (2, 1))
        with pytest.raises(InvalidIntervalError):
            continuous_cost(f, (0, 4))


class TestEndpointMaxSq:
    def test_square_front_values(self):
        f = square_front()
        assert endpoint_max_sq(f, 0, 3, 0) == 18.0
        assert endpoint_max_sq(f, 0, 3, 1) == 8.0
        assert endpoint_max_sq(f, 0, 3, 2) == 8.0

    def test_candidate_outside(self):
        f = square_front()
        with pytest.raises(InvalidIntervalError):
            endpoint_max_sq(f, 1, 2, 3)

    def test_decreasing_then_increasing(self):
        # strictly decreasing, at most one flat step, strictly increasing
        rng = np.random.default_rng(11)
        for _ in range(6):
            n = int(rng.integers(3, 201))
            f = random_front(rng, n)
            for lo, hi in [(0, n - 1), (1, n - 2), (n // 3, 2 * n // 3)]:
                if hi - lo < 2:
                    continue
                vals = [endpoint_max_sq(f, lo, hi, j) for j in range(lo, hi + 1)]
                diffs = [b - a for a, b in zip(vals, vals[1:])]
                flats = sum(1 for d in diffs if d == 0)
                assert flats <= 1
                signs = [d for d in diffs if d != 0]
                switched = False
                for d in signs:
                    if not switched and d > 0:
                        switched = True
                    elif switched:
                        assert d > 0


class TestDiscreteCost:
    def test_three_point_example(self):
        f = build_front([(0, 2), (1, 1), (2, 0)])
        res = discrete_cost(f, (0, 2))
        assert res.radius == math.sqrt(2)
        assert res.center_index == 1
        assert res.center == (1.0, 1.0)

    def test_two_point_tie_takes_lowest_index(self):
        f = square_front()
        res = discrete_cost(f, (1, 2))
        assert res.radius_sq == 2.0
        assert res.center_index == 1

    def test_square_front_plateau(self):
        f = square_front()
        res = discrete_cost(f, (0, 3))
        assert res.radius == math.sqrt(8)
        assert res.center_index == 1  # ties with 2, broken low

    def test_matches_naive_scan_everywhere(self):
        rng = np.random.default_rng(3)
        for _ in range(4):
            n = int(rng.integers(2, 201))
            f = random_front(rng, n)
            stats = OpStats()
            for lo in range(n):
                for hi in range(lo, n):
                    fast = discrete_cost(f, (lo, hi), stats)
                    naive = naive_discrete_cost(f, (lo, hi))
                    assert fast.radius_sq == naive.radius_sq
                    # index may differ only within an exact radius tie
                    assert (
                        endpoint_max_sq(f, lo, hi, fast.center_index)
                        == naive.radius_sq
                    )
            assert stats.worst_search_slack >= 0

    def test_batch_matches_scalar(self):
        rng = np.random.default_rng(5)
        for _ in range(4):
            n = int(rng.integers(2, 121))
            f = random_front(rng, n)
            los, his = map(
                np.asarray, zip(*[(l, h) for l in range(n) for h in range(l, n)])
            )
            batch = _discrete_values_batch(f.xs, f.ys, los, his)
            for l, h, v in zip(los, his, batch):
                assert v == discrete_cost(f, (l, h)).radius_sq

    def test_eval_budget_per_search(self):
        rng = np.random.default_rng(9)
        f = random_front(rng, 200)
        stats = OpStats()
        for lo in range(0, 150, 7):
            for hi in range(lo, 200, 3):
                discrete_cost(f, (lo, hi), stats)
        assert stats.worst_search_slack >= 0


class TestDispatch:
    def test_singleton_any_variant(self):
        f = square_front()
        assert cost(f, (2, 2), Variant.CONTINUOUS).radius == 0.0
        assert cost(f, (2, 2), Variant.DISCRETE).radius == 0.0

    def test_two_point_both_variants(self):
        f = build_front([(0, 1), (1, 0)])
        assert cost(f, (0, 1), "discrete").radius == math.sqrt(2)
        assert cost(f, (0, 1), "continuous").radius == math.sqrt(2) / 2

    def test_string_variant_accepted(self):
        f = square_front()
        assert cost(f, (0, 3), "discrete").radius_sq == 8.0


class TestAgainstEnclosingBallOracle:
    def test_continuous_equals_meb_on_intervals(self):
        rng = np.random.default_rng(17)
        for _ in range(4):
            n = int(rng.integers(2, 41))
            f = random_front(rng, n)
            pts = f.to_array()
            for lo in range(n):
                for hi in range(lo, n):
                    res = continuous_cost(f, (lo, hi))
                    r_meb, _ = exact_meb(pts[lo : hi + 1])
                    assert res.radius == pytest.approx(
                        r_meb, rel=1e-9, abs=1e-12
                    )

    def test_midpoint_is_the_unique_minimizer(self):
        rng = np.random.default_rng(23)
        f = random_front(rng, 30)
        pts = f.to_array()
        lo, hi = 4, 21
        res = continuous_cost(f, (lo, hi))
        member = pts[lo : hi + 1]

        def worst(cx, cy):
            d = (member[:, 0] - cx) ** 2 + (member[:, 1] - cy) ** 2
            return float(d.max())

        assert worst(*res.center) == pytest.approx(res.radius_sq, rel=1e-12)
        for _ in range(200):
            dx, dy = rng.normal(0, res.radius, 2)
            if (dx, dy) == (0.0, 0.0):
                continue
            assert worst(res.center.obj1 + dx, res.center.obj2 + dy) > res.radius_sq


def test_inclusion_monotonicity_stepwise():
    # cost([lo, hi]) <= cost([lo-1, hi]) and <= cost([lo, hi+1]) for every
    # interval implies monotonicity under any nesting
    rng = np.random.default_rng(31)
    for _ in range(3):
        n = int(rng.integers(2, 61))
        f = random_front(rng, n)
        for variant in Variant:
            table = {
                (lo, hi): cost(f, (lo, hi), variant).radius_sq
                for lo in range(n)
                for hi in range(lo, n)
            }
            for (lo, hi), v in table.items():
                if lo > 0:
                    assert v <= table[(lo - 1, hi)]
                if hi < n - 1:
                    assert v <= table[(lo, hi + 1)]


def test_nested_interval_monotonicity_sampled():
    rng = np.random.default_rng(37)
    f = random_front(rng, 60)
    for variant in Variant:
        for _ in range(300):
            lo_o, hi_o = sorted(rng.integers(0, 60, 2))
            lo_i = int(rng.integers(lo_o, hi_o + 1))
            hi_i = int(rng.integers(lo_i, hi_o + 1))
            inner = cost(f, (lo_i, hi_i), variant).radius_sq
            outer = cost(f, (lo_o, hi_o), variant).radius_sq
            assert inner <= outer


def test_coverage_every_member_within_radius():
    rng = np.random.default_rng(41)
    for _ in range(3):
        n = int(rng.integers(2, 81))
        f = random_front(rng, n)
        pts = list(f)
        for variant in Variant:
            for _ in range(60):
                lo, hi = sorted(rng.integers(0, n, 2))
                res = cost(f, (int(lo), int(hi)), variant)
                for p in pts[lo : hi + 1]:
                    assert distance_sq(res.center, p) <= res.radius_sq * (
                        1 + 1e-12
                    )


def test_batch_continuous_matches_scalar():
    rng = np.random.default_rng(43)
    f = random_front(rng, 90)
    los, his = map(
        np.asarray, zip(*[(l, h) for l in range(90) for h in range(l, 90)])
    )
    batch = interval_cost_sq_batch(f.xs, f.ys, los, his, Variant.CONTINUOUS)
    for l, h, v in zip(los, his, batch):
        assert v == continuous_cost(f, (int(l), int(h))).radius_sq
