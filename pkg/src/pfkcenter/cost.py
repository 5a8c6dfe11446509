"""Costs of interval clusters on a sorted front.

The continuous cost of an interval is closed-form from its two extreme
points (half their distance, centered at their midpoint).  The discrete
cost minimizes, over candidate centers inside the interval, the distance
to the farther extreme; that candidate sequence is the max of an
increasing and a decreasing sequence, so a bisection comparing adjacent
candidates finds the minimum with O(log n) evaluations.

All searches compare squared radii.  Square roots are taken only when a
result is reported, so no comparison can be flipped by sqrt rounding.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .front import ParetoFront, Point

__all__ = [
    "Variant",
    "CostResult",
    "OpStats",
    "InvalidIntervalError",
    "cost",
    "continuous_cost",
    "discrete_cost",
    "endpoint_max_sq",
]


class Variant(str, enum.Enum):
    """Which center rule applies: anywhere in the plane, or an input point."""

    CONTINUOUS = "continuous"
    DISCRETE = "discrete"

    @property
    def gamma(self) -> int:
        return 0 if self is Variant.CONTINUOUS else 1


class InvalidIntervalError(ValueError):
    pass


@dataclass
class OpStats:
    """Instrumentation counters for complexity certificates.

    ``cost_evals`` counts interval-cost evaluations (one per interval
    asked, either variant).  ``fij_evals`` counts candidate-center
    evaluations inside discrete searches.  ``worst_search_slack`` is the
    smallest observed value of (2*ceil(log2 n) + 4) - evals over all
    discrete searches; it stays >= 0 when the per-search bound holds.
    """

    cost_evals: int = 0
    fij_evals: int = 0
    backtrack_cost_evals: int = 0
    per_line_cost_evals: list = field(default_factory=list)
    peak_dp_lines: int = 0
    worst_search_slack: float = math.inf

    def merge(self, other: "OpStats") -> None:
        self.cost_evals += other.cost_evals
        self.fij_evals += other.fij_evals
        self.backtrack_cost_evals += other.backtrack_cost_evals
        self.worst_search_slack = min(
            self.worst_search_slack, other.worst_search_slack
        )

    def record_search(self, n_points: int, evals: int) -> None:
        bound = 2 * math.ceil(math.log2(n_points)) + 4
        self.worst_search_slack = min(self.worst_search_slack, bound - evals)


@dataclass(frozen=True)
class CostResult:
    """Radius and center of one covered interval.

    ``center_index`` is set for the discrete variant only; there the
    center is the front point at that index.  For the continuous variant
    the center is the midpoint of the interval's extreme points.
    """

    radius_sq: float
    radius: float
    center: Point
    center_index: int | None = None


def _check_interval(front: ParetoFront, c) -> tuple[int, int]:
    lo, hi = int(c[0]), int(c[1])
    if not (0 <= lo <= hi < len(front)):
        raise InvalidIntervalError(
            f"invalid interval [{lo}, {hi}] on a front of {len(front)} points"
        )
    return lo, hi


# ---------------------------------------------------------------------------
# scalar kernels (pure python floats; exact same arithmetic as the batch path)

def _dsq_s(xs, ys, i: int, j: int) -> float:
    dx = xs[j] - xs[i]
    dy = ys[j] - ys[i]
    return dx * dx + dy * dy


def _continuous_sq_s(xs, ys, lo: int, hi: int) -> float:
    return 0.25 * _dsq_s(xs, ys, lo, hi)


def _discrete_sq_s(xs, ys, lo: int, hi: int, stats: OpStats | None = None):
    """Exact discrete interval cost, returning (radius_sq, center_index).

    Bisection over candidates j in [lo, hi] of max(d2(lo,j), d2(j,hi)).
    The first term increases with j and the second decreases, so when the
    two probed values are equal the side on which the max is attained by
    the monotone component tells which half can be discarded; the probed
    value is kept as a candidate so rounding-induced plateaus cannot hide
    the minimum.
    """
    n = hi - lo + 1
    if n == 1:
        return 0.0, lo
    if n == 2:
        v = _dsq_s(xs, ys, lo, hi)
        if stats is not None:
            stats.fij_evals += 2
        return v, lo
    xlo = xs[lo]
    ylo = ys[lo]
    xhi = xs[hi]
    yhi = ys[hi]
    a, b = lo, hi
    best_v = math.inf
    best_i = hi + 1
    evals = 0
    while b - a >= 2:
        m = (a + b) >> 1
        dx = xs[m] - xlo
        dy = ys[m] - ylo
        g1 = dx * dx + dy * dy
        dx = xhi - xs[m]
        dy = yhi - ys[m]
        h1 = dx * dx + dy * dy
        v1 = g1 if g1 >= h1 else h1
        m1 = m + 1
        dx = xs[m1] - xlo
        dy = ys[m1] - ylo
        g2 = dx * dx + dy * dy
        dx = xhi - xs[m1]
        dy = yhi - ys[m1]
        h2 = dx * dx + dy * dy
        v2 = g2 if g2 >= h2 else h2
        evals += 2
        if v1 < best_v or (v1 == best_v and m < best_i):
            best_v, best_i = v1, m
        if v2 < best_v or (v2 == best_v and m1 < best_i):
            best_v, best_i = v2, m1
        if v1 < v2:
            b = m
        elif v1 > v2:
            a = m1
        elif h1 >= g1:
            # everything left of m is at least h1 == v1
            a = m1
        else:
            b = m
    for j in (a, b) if b > a else (a,):
        dx = xs[j] - xlo
        dy = ys[j] - ylo
        g = dx * dx + dy * dy
        dx = xhi - xs[j]
        dy = yhi - ys[j]
        h = dx * dx + dy * dy
        v = g if g >= h else h
        evals += 1
        if v < best_v or (v == best_v and j < best_i):
            best_v, best_i = v, j
    if stats is not None:
        stats.fij_evals += evals
        stats.record_search(n, evals)
    return best_v, best_i


def interval_cost_sq(
    front: ParetoFront,
    lo: int,
    hi: int,
    variant: Variant,
    stats: OpStats | None = None,
) -> float:
    """Scalar squared cost of one interval; counts as one cost evaluation."""
    if stats is not None:
        stats.cost_evals += 1
    xs, ys = front.xs, front.ys
    if variant is Variant.CONTINUOUS:
        return _continuous_sq_s(xs, ys, lo, hi)
    return _discrete_sq_s(xs, ys, lo, hi, stats)[0]


# ---------------------------------------------------------------------------
# batch kernels

def _dsq_b(xs, ys, i, j):
    dx = xs[j] - xs[i]
    dy = ys[j] - ys[i]
    return dx * dx + dy * dy


def _discrete_values_batch(xs, ys, lo, hi, stats: OpStats | None = None):
    """Vectorized discrete costs; value-exact against any full scan.

    Instead of comparing adjacent candidates, bisect the crossing of the
    two monotone components: the distance to the left extreme (weakly
    increasing in floats) meets the distance to the right extreme (weakly
    decreasing) at the first index l where left >= right, and the minimum
    of the max is exactly min(f(l-1), f(l)).  One probe per round.
    """
    lo = np.asarray(lo, dtype=np.int64)
    hi = np.asarray(hi, dtype=np.int64)
    val = np.zeros(lo.shape, dtype=np.float64)
    width = hi - lo
    pair = width == 1
    if pair.any():
        val[pair] = _dsq_b(xs, ys, lo[pair], hi[pair])
    total_evals = 2 * int(pair.sum())
    sel = np.flatnonzero(width >= 2)
    if sel.size:
        xlo = xs[lo[sel]]
        ylo = ys[lo[sel]]
        xhi = xs[hi[sel]]
        yhi = ys[hi[sel]]

        def probe(j):
            xm = xs[j]
            ym = ys[j]
            dx = xm - xlo
            dy = ym - ylo
            g = dx * dx + dy * dy
            dx = xhi - xm
            dy = yhi - ym
            h = dx * dx + dy * dy
            return g, h

        # left >= right is false at lo and true at hi on a strict front
        a = lo[sel].copy()
        b = hi[sel].copy()
        ev = np.zeros(sel.size, dtype=np.int64)
        active = (b - a) >= 2
        while active.any():
            m = (a + b) >> 1
            g, h = probe(m)
            crossed = g >= h
            b = np.where(active & crossed, m, b)
            a = np.where(active & ~crossed, m, a)
            ev += active
            active = (b - a) >= 2
        ga, ha = probe(a)
        gb, hb = probe(b)
        ev += 2
        val[sel] = np.minimum(np.maximum(ga, ha), np.maximum(gb, hb))
        total_evals += int(ev.sum())
        if stats is not None:
            n = (width[sel] + 1).astype(np.float64)
            bound = 2.0 * np.ceil(np.log2(n)) + 4.0
            stats.worst_search_slack = min(
                stats.worst_search_slack, float((bound - ev).min())
            )
    if stats is not None:
        stats.fij_evals += total_evals
        stats.cost_evals += int(lo.size)
    return val


def interval_cost_sq_batch(
    xs,
    ys,
    lo,
    hi,
    variant: Variant,
    stats: OpStats | None = None,
) -> np.ndarray:
    """Vectorized squared costs for parallel index arrays ``lo``, ``hi``."""
    if variant is Variant.CONTINUOUS:
        if stats is not None:
            stats.cost_evals += int(np.asarray(lo).size)
        return 0.25 * _dsq_b(xs, ys, lo, hi)
    return _discrete_values_batch(xs, ys, lo, hi, stats)


# ---------------------------------------------------------------------------
# public operations

def endpoint_max_sq(front: ParetoFront, lo: int, hi: int, j: int) -> float:
    """Squared distance from candidate center j to the farther of the
    interval's two extreme points."""
    lo, hi = _check_interval(front, (lo, hi))
    if not lo <= j <= hi:
        raise InvalidIntervalError(f"candidate {j} outside interval [{lo}, {hi}]")
    xs, ys = front.xs, front.ys
    return float(max(_dsq_s(xs, ys, lo, j), _dsq_s(xs, ys, j, hi)))


def continuous_cost(front: ParetoFront, c) -> CostResult:
    """Smallest covering ball of an interval when the center is free.

    O(1): the radius is half the distance between the interval's extreme
    points and the center is their midpoint.
    """
    lo, hi = _check_interval(front, c)
    xs, ys = front.xs, front.ys
    r_sq = _continuous_sq_s(xs, ys, lo, hi)
    center = Point(
        float((xs[lo] + xs[hi]) / 2.0), float((ys[lo] + ys[hi]) / 2.0)
    )
    return CostResult(float(r_sq), math.sqrt(r_sq), center)


def discrete_cost(
    front: ParetoFront, c, stats: OpStats | None = None
) -> CostResult:
    """Smallest covering ball of an interval centered at one of its points.

    Runs the adjacent-candidate bisection, so the interval cost needs
    O(log n) candidate evaluations instead of a full scan.  Ties on the
    radius are broken toward the lowest index among probed candidates.
    """
    lo, hi = _check_interval(front, c)
    if stats is not None:
        stats.cost_evals += 1
    r_sq, j = _discrete_sq_s(front.xs, front.ys, lo, hi, stats)
    return CostResult(float(r_sq), math.sqrt(r_sq), front[j], int(j))


def cost(
    front: ParetoFront,
    c,
    variant: Variant,
    stats: OpStats | None = None,
) -> CostResult:
    """Dispatch on the variant."""
    variant = Variant(variant)
    if variant is Variant.CONTINUOUS:
        return continuous_cost(front, c)
    return discrete_cost(front, c, stats)
