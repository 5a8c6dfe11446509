"""Exact K-cluster solver over interval partitions of a sorted front.

The optimal value for k clusters over every prefix is computed line by
line from the previous line only, so two lines are resident at any time.
Each line entry minimizes, over the start of the last cluster, the max
of the previous line's prefix value (non-decreasing) and the last
cluster's cost (non-increasing); that is again a max of monotone
sequences, minimized by the same adjacent-candidate bisection used for
discrete interval costs.  The partition itself is rebuilt afterwards by
a greedy right-to-left pass that only needs the optimal radius.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .cost import (
    CostResult,
    OpStats,
    Variant,
    _discrete_sq_s,
    cost,
    interval_cost_sq_batch,
)
from .front import IntervalCluster, ParetoFront, Point

__all__ = [
    "DpLine",
    "Solution",
    "InternalConsistencyError",
    "solve",
    "solve_one_center",
    "dp_first_line",
    "dp_line_entry",
    "backtrack_min_index",
    "opt_sq_by_k",
    "assemble_solution",
]


class InternalConsistencyError(RuntimeError):
    """The reconstruction contradicts the computed optimum; a solver bug."""


@dataclass(frozen=True)
class DpLine:
    """One line of the value recursion: values[i] is the optimal squared
    radius covering the prefix [0, i] with k clusters."""

    k: int
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)


@dataclass
class Solution:
    """Optimal radius plus an interval partition of the front.

    ``clusters`` partition [0, n-1] contiguously in index order.  When
    ties make fewer than k nonempty clusters reach the optimum (always
    the case for k > n), only the nonempty ones are reported and
    ``effective_k`` is their count.
    """

    front: ParetoFront
    variant: Variant
    k: int
    clusters: tuple[IntervalCluster, ...]
    centers: tuple[CostResult, ...]
    opt_radius_sq: float
    opt_radius: float
    stats: OpStats = field(default_factory=OpStats, repr=False)

    @property
    def effective_k(self) -> int:
        return len(self.clusters)

    def labels(self) -> np.ndarray:
        """Cluster index of every front point, in front order."""
        out = np.empty(len(self.front), dtype=np.intp)
        for t, c in enumerate(self.clusters):
            out[c.lo : c.hi + 1] = t
        return out


def _first_line_values(
    front: ParetoFront, variant: Variant, stats: OpStats | None
) -> np.ndarray:
    n = len(front)
    idx = np.arange(n, dtype=np.int64)
    lo = np.zeros(n, dtype=np.int64)
    vals = interval_cost_sq_batch(front.xs, front.ys, lo, idx, variant, stats)
    assert _nondecreasing(vals)
    return vals


def dp_first_line(
    front: ParetoFront, variant: Variant, stats: OpStats | None = None
) -> DpLine:
    """Line k=1: values[i] is the cost of the single cluster [0, i]."""
    return DpLine(1, _first_line_values(front, Variant(variant), stats))


def _nondecreasing(a: np.ndarray) -> bool:
    return bool(np.all(a[1:] >= a[:-1])) if a.size > 1 else True


def _line_entries_batch(
    xs: np.ndarray,
    ys: np.ndarray,
    prev: np.ndarray,
    iarr: np.ndarray,
    variant: Variant,
    stats: OpStats | None,
) -> np.ndarray:
    """Entries of one DP line for prefix-end indices ``iarr`` (all >= 1).

    For each i the candidate start s of the last cluster ranges over
    [1, i]; starting at 0 is never better than starting at 1 because a
    one-point prefix costs nothing with at least one cluster available.
    g(s) = max(prev[s-1], cost([s, i])) is the max of a non-decreasing
    and a non-increasing float sequence, so its minimum sits exactly at
    the crossing: the first s where prev[s-1] >= cost([s, i]), or one
    step before it.  The crossing is found by bisecting that monotone
    predicate, one cost evaluation per round.
    """
    iarr = np.asarray(iarr, dtype=np.int64)
    a = np.ones(iarr.size, dtype=np.int64)
    b = iarr.copy()
    # prev[0] = 0 < cost([1, i]) for i >= 2, and prev[i-1] >= cost([i, i]) = 0
    cur = np.flatnonzero((b - a) >= 2)
    while cur.size:
        m = (a[cur] + b[cur]) >> 1
        c = interval_cost_sq_batch(xs, ys, m, iarr[cur], variant, stats)
        crossed = prev[m - 1] >= c
        b[cur] = np.where(crossed, m, b[cur])
        a[cur] = np.where(crossed, a[cur], m)
        cur = cur[(b[cur] - a[cur]) >= 2]
    ga = np.maximum(
        prev[a - 1], interval_cost_sq_batch(xs, ys, a, iarr, variant, stats)
    )
    gb = np.maximum(
        prev[b - 1], interval_cost_sq_batch(xs, ys, b, iarr, variant, stats)
    )
    return np.minimum(ga, gb)


def dp_line_entry(
    front: ParetoFront,
    prev: DpLine,
    i: int,
    variant: Variant,
    stats: OpStats | None = None,
) -> float:
    """One entry of the next line, from the previous line's values."""
    n = len(front)
    if not 1 <= i < n:
        raise ValueError(f"entry index {i} out of range [1, {n - 1}]")
    out = _line_entries_batch(
        front.xs,
        front.ys,
        np.asarray(prev.values, dtype=np.float64),
        np.array([i], dtype=np.int64),
        Variant(variant),
        stats,
    )
    return float(out[0])


def _next_line_values(
    front: ParetoFront,
    prev: np.ndarray,
    variant: Variant,
    workers: int,
    pool: ThreadPoolExecutor | None,
    stats: OpStats | None,
) -> np.ndarray:
    n = len(front)
    curr = np.empty(n, dtype=np.float64)
    curr[0] = 0.0
    if n == 1:
        return curr
    iarr = np.arange(1, n, dtype=np.int64)
    if pool is None or workers <= 1 or iarr.size < 2 * workers:
        curr[1:] = _line_entries_batch(
            front.xs, front.ys, prev, iarr, variant, stats
        )
    else:
        chunks = np.array_split(iarr, workers)
        parts = [OpStats() for _ in chunks]

        def work(chunk, part):
            return _line_entries_batch(
                front.xs, front.ys, prev, chunk, variant, part
            )

        for chunk, vals in zip(chunks, pool.map(work, chunks, parts)):
            curr[chunk[0] : chunk[-1] + 1] = vals
        if stats is not None:
            for part in parts:
                stats.merge(part)
    assert _nondecreasing(curr)
    return curr


def solve_one_center(front: ParetoFront, variant: Variant) -> Solution:
    """The k=1 case: cost of the whole front, O(n).

    The discrete center comes from a single linear scan of the candidate
    sequence rather than the bisection; with O(1) candidate evaluations
    the scan already meets the linear bound.
    """
    variant = Variant(variant)
    n = len(front)
    stats = OpStats()
    whole = IntervalCluster(0, n - 1)
    if variant is Variant.CONTINUOUS:
        res = cost(front, whole, variant, stats)
    else:
        xs, ys = front.xs, front.ys
        idx = np.arange(n, dtype=np.int64)
        lo_d = _pairwise_sq(xs, ys, 0, idx)
        hi_d = _pairwise_sq(xs, ys, n - 1, idx)
        f = np.maximum(lo_d, hi_d)
        j = int(np.argmin(f))  # first minimum: lowest-index tie break
        r_sq = float(f[j])
        stats.cost_evals += 1
        stats.fij_evals += n
        res = CostResult(r_sq, math.sqrt(r_sq), front[j], j)
    return Solution(
        front=front,
        variant=variant,
        k=1,
        clusters=(whole,),
        centers=(res,),
        opt_radius_sq=res.radius_sq,
        opt_radius=res.radius,
        stats=stats,
    )


def _pairwise_sq(xs, ys, i: int, j: np.ndarray) -> np.ndarray:
    dx = xs[j] - xs[i]
    dy = ys[j] - ys[i]
    return dx * dx + dy * dy


def backtrack_min_index(
    front: ParetoFront,
    k: int,
    opt_sq: float,
    variant: Variant,
    stats: OpStats | None = None,
) -> list[IntervalCluster]:
    """Rebuild an optimal partition from the optimal squared radius.

    Starting from the right, each cluster is grown leftward while its
    cost stays within ``opt_sq``, so every boundary is the lower bound of
    the corresponding boundary in any optimal partition.  When exact cost
    ties let a cluster swallow the points of the ones before it, fewer
    than k clusters are returned.  The leftover prefix must itself fit in
    the radius; anything else means ``opt_sq`` was not this instance's
    optimum.
    """
    variant = Variant(variant)
    n = len(front)
    xs, ys = front.xs, front.ys
    evals = 0
    out: list[IntervalCluster] = []
    max_id = n - 1
    if variant is Variant.CONTINUOUS:
        def cost_sq(lo, hi):
            dx = xs[hi] - xs[lo]
            dy = ys[hi] - ys[lo]
            return 0.25 * (dx * dx + dy * dy)
    else:
        def cost_sq(lo, hi):
            return _discrete_sq_s(xs, ys, lo, hi, stats)[0]

    for _ in range(k, 1, -1):
        if max_id < 0:
            break
        min_id = max_id
        while min_id > 0:
            evals += 1
            if cost_sq(min_id - 1, max_id) <= opt_sq:
                min_id -= 1
            else:
                break
        out.append(IntervalCluster(min_id, max_id))
        max_id = min_id - 1
    if max_id >= 0:
        evals += 1
        if cost_sq(0, max_id) > opt_sq:
            raise InternalConsistencyError(
                "leftmost cluster exceeds the optimal radius; "
                "the optimum passed to backtracking is not achievable"
            )
        out.append(IntervalCluster(0, max_id))
    out.reverse()
    if stats is not None:
        stats.backtrack_cost_evals += evals
        stats.cost_evals += evals
    return out


def assemble_solution(
    front: ParetoFront,
    clusters,
    k: int,
    variant: Variant,
    stats: OpStats | None = None,
) -> Solution:
    """Score a contiguous partition and package it as a Solution."""
    variant = Variant(variant)
    stats = stats if stats is not None else OpStats()
    centers = tuple(cost(front, c, variant, stats) for c in clusters)
    opt_sq = max(res.radius_sq for res in centers)
    return Solution(
        front=front,
        variant=variant,
        k=k,
        clusters=tuple(IntervalCluster(*c) for c in clusters),
        centers=centers,
        opt_radius_sq=opt_sq,
        opt_radius=math.sqrt(opt_sq),
        stats=stats,
    )


def _singleton_solution(front: ParetoFront, k: int, variant: Variant) -> Solution:
    n = len(front)
    clusters = tuple(IntervalCluster(i, i) for i in range(n))
    centers = tuple(CostResult(0.0, 0.0, front[i], i if Variant(variant) is Variant.DISCRETE else None) for i in range(n))
    return Solution(
        front=front,
        variant=Variant(variant),
        k=k,
        clusters=clusters,
        centers=centers,
        opt_radius_sq=0.0,
        opt_radius=0.0,
        stats=OpStats(),
    )


def solve(
    front: ParetoFront,
    k: int,
    variant: Variant,
    workers: int = 1,
) -> Solution:
    """Optimal k-cluster covering of the front, both variants.

    Lines are computed for k = 1..k keeping only the previous one; the
    optimum is the last entry of the last line, and the partition comes
    from :func:`backtrack_min_index`.  Entries within a line are
    independent, so ``workers`` > 1 splits each line across threads with
    bit-identical results for any worker count.
    """
    variant = Variant(variant)
    if k < 1:
        raise ValueError(f"cluster count must be at least 1, got {k}")
    if workers < 1:
        raise ValueError(f"worker count must be at least 1, got {workers}")
    n = len(front)
    if k >= n:
        return _singleton_solution(front, k, variant)
    if k == 1:
        return solve_one_center(front, variant)

    stats = OpStats()
    prev = _first_line_values(front, variant, stats)
    stats.per_line_cost_evals.append(stats.cost_evals)
    stats.peak_dp_lines = 1
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for _ in range(2, k + 1):
            before = stats.cost_evals
            curr = _next_line_values(front, prev, variant, workers, pool, stats)
            stats.per_line_cost_evals.append(stats.cost_evals - before)
            stats.peak_dp_lines = max(stats.peak_dp_lines, 2)
            prev = curr  # the older line is dropped here
    finally:
        if pool is not None:
            pool.shutdown()
    opt_sq = float(prev[n - 1])
    clusters = backtrack_min_index(front, k, opt_sq, variant, stats)
    sol = assemble_solution(front, clusters, k, variant, stats)
    if sol.opt_radius_sq != opt_sq:
        raise InternalConsistencyError(
            f"partition cost {sol.opt_radius_sq!r} differs from the "
            f"computed optimum {opt_sq!r}"
        )
    return sol


def opt_sq_by_k(
    front: ParetoFront,
    k_max: int,
    variant: Variant,
    workers: int = 1,
    stats: OpStats | None = None,
) -> list[float]:
    """Optimal squared radii for k = 1..k_max from a single line sweep.

    Entries for k >= n are exactly zero and need no lines.
    """
    variant = Variant(variant)
    if k_max < 1:
        raise ValueError(f"k_max must be at least 1, got {k_max}")
    n = len(front)
    out: list[float] = []
    prev = _first_line_values(front, variant, stats)
    out.append(float(prev[n - 1]))
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for _ in range(2, min(k_max, n - 1) + 1):
            prev = _next_line_values(front, prev, variant, workers, pool, stats)
            out.append(float(prev[n - 1]))
    finally:
        if pool is not None:
            pool.shutdown()
    while len(out) < k_max:
        out.append(0.0)
    assert all(out[i + 1] <= out[i] for i in range(len(out) - 1))
    return out
