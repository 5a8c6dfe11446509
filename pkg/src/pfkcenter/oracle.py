"""Brute-force reference implementations for testing.

Everything here trades speed for transparency: full scans instead of
bisections, exhaustive circle enumeration instead of closed forms, and
outright partition enumeration instead of the line recursion.  Size
guards raise rather than truncate so a passing comparison always means
what it says.  The solver modules never import from here.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .cost import CostResult, Variant
from .front import IntervalCluster, ParetoFront, Point

__all__ = [
    "OracleGuardError",
    "OracleResult",
    "naive_discrete_cost",
    "naive_continuous_cost_sq",
    "exact_meb",
    "brute_force_intervals",
    "brute_force_all_partitions",
]

MAX_MEB_POINTS = 60
MAX_INTERVAL_N = 16
MAX_INTERVAL_K = 6
MAX_PARTITION_N = 9
MAX_PARTITION_K = 4


class OracleGuardError(ValueError):
    """An oracle was asked for more than its guard allows."""


@dataclass(frozen=True)
class OracleResult:
    """Exact optimum plus every optimal boundary vector.

    Boundaries are the 0-based end indices of clusters 1..K-1; the last
    cluster always ends at n-1.
    """

    opt_radius_sq: float
    optimal_boundaries: tuple[tuple[int, ...], ...]


def naive_discrete_cost(front: ParetoFront, c) -> CostResult:
    """Discrete interval cost by scanning every candidate center."""
    lo, hi = front.check_interval(IntervalCluster(int(c[0]), int(c[1])))
    xs, ys = front.xs, front.ys
    j = np.arange(lo, hi + 1, dtype=np.int64)
    dxl = xs[j] - xs[lo]
    dyl = ys[j] - ys[lo]
    dxh = xs[hi] - xs[j]
    dyh = ys[hi] - ys[j]
    f = np.maximum(dxl * dxl + dyl * dyl, dxh * dxh + dyh * dyh)
    t = int(np.argmin(f))  # first minimum: lowest index
    r_sq = float(f[t])
    return CostResult(r_sq, math.sqrt(r_sq), front[lo + t], lo + t)


def naive_continuous_cost_sq(front: ParetoFront, lo: int, hi: int) -> float:
    """Continuous interval cost from the extreme points, scalar arithmetic."""
    dx = front.xs[hi] - front.xs[lo]
    dy = front.ys[hi] - front.ys[lo]
    return 0.25 * (dx * dx + dy * dy)


# ---------------------------------------------------------------------------
# exact minimum enclosing ball by exhaustive pair/triple circumscription

_CONTAIN_EPS = 1.0 + 1e-12


def _circumcircle(ax, ay, bx, by, cx, cy):
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if d == 0.0:
        return None
    a2 = ax * ax + ay * ay
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d
    uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d
    return ux, uy


def _meb_small(pts: np.ndarray):
    n = len(pts)
    best_r, best_c = math.inf, None
    coords = [(float(x), float(y)) for x, y in pts]

    def consider(cx, cy):
        nonlocal best_r, best_c
        r = 0.0
        for px, py in coords:
            dx = px - cx
            dy = py - cy
            d = dx * dx + dy * dy
            if d > r:
                r = d
                if r >= best_r:
                    return
        if r < best_r:
            best_r, best_c = r, (cx, cy)

    for i in range(n):
        ax, ay = coords[i]
        for j in range(i + 1, n):
            bx, by = coords[j]
            consider((ax + bx) / 2.0, (ay + by) / 2.0)
    for i in range(n):
        ax, ay = coords[i]
        for j in range(i + 1, n):
            bx, by = coords[j]
            for t in range(j + 1, n):
                u = _circumcircle(ax, ay, bx, by, coords[t][0], coords[t][1])
                if u is not None:
                    consider(*u)
    return best_r, best_c


def _meb_vectorized(pts: np.ndarray):
    n = len(pts)
    x, y = pts[:, 0], pts[:, 1]
    centers = []
    ii, jj = np.triu_indices(n, k=1)
    centers.append(np.column_stack(((x[ii] + x[jj]) / 2.0, (y[ii] + y[jj]) / 2.0)))
    tri = np.array(list(itertools.combinations(range(n), 3)), dtype=np.int64)
    if tri.size:
        ax, ay = x[tri[:, 0]], y[tri[:, 0]]
        bx, by = x[tri[:, 1]], y[tri[:, 1]]
        cx, cy = x[tri[:, 2]], y[tri[:, 2]]
        d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
        good = d != 0.0
        a2 = ax * ax + ay * ay
        b2 = bx * bx + by * by
        c2 = cx * cx + cy * cy
        with np.errstate(divide="ignore", invalid="ignore"):
            ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d
            uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d
        centers.append(np.column_stack((ux[good], uy[good])))
    cand = np.concatenate(centers, axis=0)
    dx = cand[:, 0:1] - x[None, :]
    dy = cand[:, 1:2] - y[None, :]
    radii = (dx * dx + dy * dy).max(axis=1)
    t = int(np.argmin(radii))
    return float(radii[t]), (float(cand[t, 0]), float(cand[t, 1]))


def exact_meb(points) -> tuple[float, Point]:
    """Exact smallest enclosing ball of up to 60 points.

    Checks every circle determined by a pair (as diameter) or a triple
    (circumscribed); one of them is the minimum enclosing ball.  Returns
    (radius, center).
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim == 1 and pts.size == 2:
        pts = pts.reshape(1, 2)
    n = len(pts)
    if n == 0:
        raise ValueError("exact_meb needs at least one point")
    if n > MAX_MEB_POINTS:
        raise OracleGuardError(
            f"exact_meb is exhaustive and guarded to n <= {MAX_MEB_POINTS}, got {n}"
        )
    if n == 1:
        return 0.0, Point(float(pts[0, 0]), float(pts[0, 1]))
    if n <= 14:
        r_sq, c = _meb_small(pts)
    else:
        r_sq, c = _meb_vectorized(pts)
    return math.sqrt(r_sq), Point(c[0], c[1])


# ---------------------------------------------------------------------------
# exhaustive partition optima

def _interval_cost_table(front: ParetoFront, variant: Variant) -> np.ndarray:
    n = len(front)
    table = np.zeros((n, n))
    for lo in range(n):
        for hi in range(lo, n):
            if variant is Variant.CONTINUOUS:
                table[lo, hi] = naive_continuous_cost_sq(front, lo, hi)
            else:
                table[lo, hi] = naive_discrete_cost(
                    front, IntervalCluster(lo, hi)
                ).radius_sq
    return table


def brute_force_intervals(
    front: ParetoFront, k: int, variant: Variant
) -> OracleResult:
    """Exact optimum over every contiguous k-partition, with all argmins."""
    variant = Variant(variant)
    n = len(front)
    if n > MAX_INTERVAL_N or k > MAX_INTERVAL_K:
        raise OracleGuardError(
            f"interval enumeration guarded to n <= {MAX_INTERVAL_N}, "
            f"k <= {MAX_INTERVAL_K}; got n={n}, k={k}"
        )
    if not 1 <= k <= n:
        raise OracleGuardError(f"need 1 <= k <= n, got k={k}, n={n}")
    table = _interval_cost_table(front, variant)
    best = math.inf
    argmins: list[tuple[int, ...]] = []
    for ends in itertools.combinations(range(n - 1), k - 1):
        lo = 0
        worst = 0.0
        for e in ends + (n - 1,):
            c = table[lo, e]
            if c > worst:
                worst = c
            lo = e + 1
        if worst < best:
            best = worst
            argmins = [ends]
        elif worst == best:
            argmins.append(ends)
    return OracleResult(float(best), tuple(argmins))


def _partitions_into(n: int, k: int):
    """All set partitions of range(n) into exactly k nonempty blocks."""
    blocks: list[list[int]] = []

    def rec(i):
        if i == n:
            if len(blocks) == k:
                yield [tuple(b) for b in blocks]
            return
        if len(blocks) + (n - i) < k:
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1)
            b.pop()
        if len(blocks) < k:
            blocks.append([i])
            yield from rec(i + 1)
            blocks.pop()

    yield from rec(0)


def brute_force_all_partitions(
    front: ParetoFront, k: int, variant: Variant
) -> float:
    """Exact optimal squared radius over ALL set partitions into k parts.

    Parts need not be intervals: the continuous cost of a part is its
    exact minimum enclosing ball and the discrete cost scans every member
    as a candidate center against every other member.
    """
    variant = Variant(variant)
    n = len(front)
    if n > MAX_PARTITION_N or k > MAX_PARTITION_K:
        raise OracleGuardError(
            f"set-partition enumeration guarded to n <= {MAX_PARTITION_N}, "
            f"k <= {MAX_PARTITION_K}; got n={n}, k={k}"
        )
    if not 1 <= k <= n:
        raise OracleGuardError(f"need 1 <= k <= n, got k={k}, n={n}")
    pts = [(float(x), float(y)) for x, y in zip(front.xs, front.ys)]
    cache: dict[tuple[int, ...], float] = {}

    def part_cost(block: tuple[int, ...]) -> float:
        got = cache.get(block)
        if got is not None:
            return got
        if variant is Variant.CONTINUOUS:
            r, _ = exact_meb([pts[i] for i in block])
            v = r * r
        else:
            v = math.inf
            for c in block:
                worst = 0.0
                for p in block:
                    dx = pts[p][0] - pts[c][0]
                    dy = pts[p][1] - pts[c][1]
                    d = dx * dx + dy * dy
                    if d > worst:
                        worst = d
                if worst < v:
                    v = worst
        cache[block] = v
        return v

    best = math.inf
    for partition in _partitions_into(n, k):
        worst = 0.0
        for block in partition:
            c = part_cost(block)
            if c > worst:
                worst = c
            if worst >= best:
                break
        if worst < best:
            best = worst
    return float(best)
