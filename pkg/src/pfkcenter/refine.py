"""Post-processing: alternative reconstructions, cluster balancing, and
the cluster-count selection curve.

The greedy reconstruction in :mod:`pfkcenter.dp` yields the partition
with minimal boundaries; its mirror here yields the maximal one, and
many optimal partitions can live between the two.  Balancing runs a
steepest-descent local search over boundary shifts between adjacent
clusters, never letting any cluster exceed the input partition's radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cost import OpStats, Variant, interval_cost_sq
from .dp import InternalConsistencyError, opt_sq_by_k
from .front import IntervalCluster, ParetoFront

__all__ = [
    "KCurve",
    "backtrack_max_index",
    "balance_partition",
    "k_curve",
    "elbow_select",
]


@dataclass(frozen=True)
class KCurve:
    """Optimal radius as a function of the cluster count, k = 1..k_max."""

    entries: tuple[tuple[int, float], ...]

    @property
    def radii(self) -> list[float]:
        return [r for _, r in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


def backtrack_max_index(
    front: ParetoFront,
    k: int,
    opt_sq: float,
    variant: Variant,
    stats: OpStats | None = None,
) -> list[IntervalCluster]:
    """Mirror of the minimal-boundary reconstruction: grow from the left.

    Each cluster extends rightward while its cost stays within
    ``opt_sq``, giving the optimal partition with maximal boundaries.
    """
    variant = Variant(variant)
    n = len(front)
    evals = 0
    out: list[IntervalCluster] = []
    min_id = 0
    for _ in range(k, 1, -1):
        if min_id > n - 1:
            break
        max_id = min_id
        while max_id < n - 1:
            evals += 1
            if interval_cost_sq(front, min_id, max_id + 1, variant, stats) <= opt_sq:
                max_id += 1
            else:
                break
        out.append(IntervalCluster(min_id, max_id))
        min_id = max_id + 1
    if min_id <= n - 1:
        evals += 1
        if interval_cost_sq(front, min_id, n - 1, variant, stats) > opt_sq:
            raise InternalConsistencyError(
                "rightmost cluster exceeds the optimal radius; "
                "the optimum passed to backtracking is not achievable"
            )
        out.append(IntervalCluster(min_id, n - 1))
    if stats is not None:
        stats.backtrack_cost_evals += evals
    return out


def k_curve(
    front: ParetoFront,
    k_max: int,
    variant: Variant,
    workers: int = 1,
) -> KCurve:
    """The (k, optimal radius) table from one line sweep up to k_max."""
    if k_max < 1:
        raise ValueError(f"k_max must be at least 1, got {k_max}")
    sq = opt_sq_by_k(front, k_max, Variant(variant), workers=workers)
    return KCurve(tuple((k + 1, math.sqrt(v)) for k, v in enumerate(sq)))


def elbow_select(curve: KCurve) -> int:
    """Pick the interior k with the largest second difference of the radii.

    Ties go to the smaller k, so a straight-line curve yields k=2.
    """
    radii = curve.radii
    if len(radii) < 3:
        raise ValueError("elbow selection needs a curve with at least 3 entries")
    best_k, best_d2 = None, -math.inf
    for t in range(1, len(radii) - 1):
        d2 = radii[t - 1] - 2.0 * radii[t] + radii[t + 1]
        if d2 > best_d2:
            best_k, best_d2 = curve.entries[t][0], d2
    return best_k


def _check_partition(front: ParetoFront, clusters) -> list[IntervalCluster]:
    n = len(front)
    cl = [IntervalCluster(int(c[0]), int(c[1])) for c in clusters]
    if not cl or cl[0].lo != 0 or cl[-1].hi != n - 1:
        raise ValueError("clusters must cover the front from first to last index")
    for a, b in zip(cl, cl[1:]):
        if a.hi + 1 != b.lo:
            raise ValueError(
                f"clusters [{a.lo},{a.hi}] and [{b.lo},{b.hi}] are not adjacent"
            )
    for c in cl:
        if c.lo > c.hi:
            raise ValueError(f"empty cluster [{c.lo},{c.hi}]")
    return cl


def _best_radius_split(front, a, c, variant, stats):
    """Boundary in [a, c-1] minimizing the larger cost of the two sides.

    max(cost([a, b']), cost([b'+1, c])) is a max of monotone sequences in
    b'; same bisection scheme as the solver kernels, scalar here.
    """
    lo_b, hi_b = a, c - 1
    best_v, best_b = math.inf, c

    def probe(bp):
        nonlocal best_v, best_b
        left = interval_cost_sq(front, a, bp, variant, stats)
        right = interval_cost_sq(front, bp + 1, c, variant, stats)
        v = left if left >= right else right
        if v < best_v or (v == best_v and bp < best_b):
            best_v, best_b = v, bp
        return v, left, right

    while hi_b - lo_b >= 2:
        m = (lo_b + hi_b) >> 1
        v1, l1, r1 = probe(m)
        v2, _, _ = probe(m + 1)
        if v1 < v2:
            hi_b = m
        elif v1 > v2:
            lo_b = m + 1
        elif r1 >= l1:
            # the decreasing side attains the max: all of [lo_b, m] >= v1
            lo_b = m + 1
        else:
            hi_b = m
    for bp in (lo_b, hi_b) if hi_b > lo_b else (lo_b,):
        probe(bp)
    return best_v, best_b


def _feasible_window(front, a, c, opt_sq, variant, stats):
    """Range of boundaries keeping both sides within opt_sq.

    cost([a, b']) grows with b' and cost([b'+1, c]) shrinks, so each
    constraint is a one-sided threshold found by bisection.
    """
    lo_b, hi_b = a, c - 1
    # largest b' with cost([a, b']) <= opt_sq
    lo, hi = a, c - 1
    while lo < hi:
        m = (lo + hi + 1) >> 1
        if interval_cost_sq(front, a, m, variant, stats) <= opt_sq:
            lo = m
        else:
            hi = m - 1
    hi_b = lo
    # smallest b' with cost([b'+1, c]) <= opt_sq
    lo, hi = a, hi_b
    while lo < hi:
        m = (lo + hi) >> 1
        if interval_cost_sq(front, m + 1, c, variant, stats) <= opt_sq:
            hi = m
        else:
            lo = m + 1
    return lo, hi_b


def balance_partition(
    front: ParetoFront,
    clusters,
    variant: Variant,
    objective: str = "radius",
    stats: OpStats | None = None,
) -> list[IntervalCluster]:
    """Even out a partition without ever exceeding its max cluster cost.

    Steepest descent over adjacent pairs.  A move re-splits the union of
    two neighboring clusters at the boundary that minimizes the pair's
    larger cost (``objective="radius"``) or larger cardinality
    (``objective="cardinality"``); the move is taken only if that pair
    metric strictly improves, and the globally best improving move is
    applied each round.  Terminates at a local optimum.
    """
    variant = Variant(variant)
    if objective not in ("radius", "cardinality"):
        raise ValueError(f"unknown balance objective {objective!r}")
    cl = _check_partition(front, clusters)
    if len(cl) < 2:
        return cl
    costs = [
        interval_cost_sq(front, c.lo, c.hi, variant, stats) for c in cl
    ]
    opt_sq = max(costs)
    max_moves = len(front) * len(cl)
    for _ in range(max_moves + 1):
        best = None  # (improvement, pair index, boundary, new costs)
        for t in range(len(cl) - 1):
            a, c = cl[t].lo, cl[t + 1].hi
            if objective == "radius":
                cur = max(costs[t], costs[t + 1])
                new_v, new_b = _best_radius_split(front, a, c, variant, stats)
                if new_v >= cur or new_b == cl[t].hi:
                    continue
                gain = cur - new_v
            else:
                cur = max(cl[t].size, cl[t + 1].size)
                w_lo, w_hi = _feasible_window(front, a, c, opt_sq, variant, stats)
                mid2 = a + c - 1  # 2*ideal boundary
                cands = {max(w_lo, min(w_hi, mid2 // 2)),
                         max(w_lo, min(w_hi, (mid2 + 1) // 2))}
                new_b, new_m = None, cur
                for bp in sorted(cands):
                    m = max(bp - a + 1, c - bp)
                    if m < new_m or (m == new_m and new_b is None):
                        new_b, new_m = bp, m
                if new_b is None or new_m >= cur or new_b == cl[t].hi:
                    continue
                gain = cur - new_m
            if best is None or gain > best[0]:
                best = (gain, t, new_b)
        if best is None:
            break
        _, t, new_b = best
        a, c = cl[t].lo, cl[t + 1].hi
        cl[t] = IntervalCluster(a, new_b)
        cl[t + 1] = IntervalCluster(new_b + 1, c)
        costs[t] = interval_cost_sq(front, a, new_b, variant, stats)
        costs[t + 1] = interval_cost_sq(front, new_b + 1, c, variant, stats)
        if costs[t] > opt_sq or costs[t + 1] > opt_sq:
            raise InternalConsistencyError("balance move exceeded the input radius")
    else:
        raise InternalConsistencyError(
            f"balancing did not settle within {max_moves} moves"
        )
    return cl
