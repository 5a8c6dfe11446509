"""Points, dominance relations, and the validated 2d Pareto front container.

A front is a set of mutually incomparable points under componentwise
minimization.  Sorted by the first objective it becomes a strictly
decreasing staircase, and that index order is what every algorithm in
this package relies on.
"""

from __future__ import annotations

import enum
import math
from typing import Iterator, NamedTuple, Sequence

import numpy as np

__all__ = [
    "Point",
    "Dominance",
    "IntervalCluster",
    "FrontValidationError",
    "ParetoFront",
    "compare",
    "distance",
    "distance_sq",
    "build_front",
]


class Point(NamedTuple):
    """A point of the objective plane; both coordinates are minimized."""

    obj1: float
    obj2: float


class Dominance(enum.Enum):
    """Outcome of comparing an ordered pair of points.

    Exactly one value holds for any pair: the plane around a point splits
    into the two incomparability quadrants (strictly precedes / follows)
    and the two comparability quadrants (dominates / is dominated), plus
    exact equality.
    """

    STRICTLY_PRECEDES = "strictly_precedes"
    STRICTLY_FOLLOWS = "strictly_follows"
    EQUAL = "equal"
    DOMINATES = "dominates"
    IS_DOMINATED = "is_dominated"


class IntervalCluster(NamedTuple):
    """A contiguous index range [lo, hi] on a sorted front, 0-based inclusive."""

    lo: int
    hi: int

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1


class FrontValidationError(ValueError):
    """Two input points are comparable (dominance or exact duplicate).

    ``index_a`` and ``index_b`` are positions in the caller's input
    sequence, ``index_a`` holding the point that sorts first.
    """

    def __init__(self, index_a: int, index_b: int, point_a: Point, point_b: Point):
        self.index_a = index_a
        self.index_b = index_b
        self.point_a = point_a
        self.point_b = point_b
        relation = compare(point_a, point_b).value
        super().__init__(
            f"input points at positions {index_a} and {index_b} are comparable "
            f"({relation}): {tuple(point_a)} vs {tuple(point_b)}"
        )


def _require_finite(p: Sequence[float]) -> None:
    if not (math.isfinite(p[0]) and math.isfinite(p[1])):
        raise ValueError(f"non-finite coordinate in point {tuple(p)!r}")


def compare(y: Sequence[float], z: Sequence[float]) -> Dominance:
    """Classify the ordered pair (y, z) under componentwise minimization."""
    _require_finite(y)
    _require_finite(z)
    y1, y2 = y[0], y[1]
    z1, z2 = z[0], z[1]
    if y1 == z1 and y2 == z2:
        return Dominance.EQUAL
    if y1 < z1 and y2 > z2:
        return Dominance.STRICTLY_PRECEDES
    if y1 > z1 and y2 < z2:
        return Dominance.STRICTLY_FOLLOWS
    if y1 <= z1 and y2 <= z2:
        return Dominance.DOMINATES
    return Dominance.IS_DOMINATED


def distance_sq(y: Sequence[float], z: Sequence[float]) -> float:
    """Squared Euclidean distance; the ordering-safe currency of this package."""
    _require_finite(y)
    _require_finite(z)
    dx = z[0] - y[0]
    dy = z[1] - y[1]
    return dx * dx + dy * dy


def distance(y: Sequence[float], z: Sequence[float]) -> float:
    return math.sqrt(distance_sq(y, z))


class ParetoFront:
    """Immutable, validated front sorted by obj1 ascending.

    For all i < j the point at i strictly precedes the point at j:
    obj1 strictly increases and obj2 strictly decreases along the index.
    Instances are safe to share across threads.
    """

    __slots__ = ("_xs", "_ys")

    def __init__(self, xs: np.ndarray, ys: np.ndarray):
        xs = np.ascontiguousarray(xs, dtype=np.float64)
        ys = np.ascontiguousarray(ys, dtype=np.float64)
        if xs.ndim != 1 or xs.shape != ys.shape:
            raise ValueError("coordinate arrays must be 1d and of equal length")
        if xs.size == 0:
            raise ValueError("a front needs at least one point")
        if not (np.isfinite(xs).all() and np.isfinite(ys).all()):
            raise ValueError("front coordinates must be finite")
        if xs.size > 1 and not (
            np.all(xs[1:] > xs[:-1]) and np.all(ys[1:] < ys[:-1])
        ):
            raise ValueError(
                "points do not form a strict staircase; use build_front() "
                "to sort, validate, or sanitize raw input"
            )
        xs.setflags(write=False)
        ys.setflags(write=False)
        self._xs = xs
        self._ys = ys

    @property
    def xs(self) -> np.ndarray:
        return self._xs

    @property
    def ys(self) -> np.ndarray:
        return self._ys

    def __len__(self) -> int:
        return self._xs.size

    def __getitem__(self, i: int) -> Point:
        return Point(float(self._xs[i]), float(self._ys[i]))

    def __iter__(self) -> Iterator[Point]:
        for x, y in zip(self._xs, self._ys):
            yield Point(float(x), float(y))

    def __repr__(self) -> str:
        return f"ParetoFront(n={len(self)})"

    def to_array(self) -> np.ndarray:
        """The front as a fresh (n, 2) array."""
        return np.column_stack((self._xs, self._ys))

    def check_interval(self, c: IntervalCluster) -> IntervalCluster:
        """Validate an interval against this front; returns it unchanged."""
        lo, hi = int(c[0]), int(c[1])
        if not (0 <= lo <= hi < len(self)):
            raise ValueError(
                f"invalid interval [{lo}, {hi}] on a front of {len(self)} points"
            )
        return IntervalCluster(lo, hi)


def build_front(points, sanitize: bool = False) -> ParetoFront:
    """Sort raw points into a validated front.

    With ``sanitize=False`` any comparable pair (dominated point or exact
    duplicate) raises :class:`FrontValidationError` naming both input
    positions.  With ``sanitize=True`` duplicates and dominated points are
    dropped first; among points tied on obj1 the one with least obj2 is
    kept.  Cost is the O(n log n) sort either way.
    """
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim == 1 and arr.size == 2:
        arr = arr.reshape(1, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("expected a sequence of (obj1, obj2) pairs")
    if arr.shape[0] == 0:
        raise ValueError("cannot build a front from an empty input")
    finite = np.isfinite(arr).all(axis=1)
    if not finite.all():
        bad = int(np.flatnonzero(~finite)[0])
        raise ValueError(f"non-finite coordinate in input point at position {bad}")

    order = np.lexsort((arr[:, 1], arr[:, 0]))  # obj1 primary, obj2 secondary
    xs = arr[order, 0]
    ys = arr[order, 1]

    if sanitize:
        keep = np.empty(xs.size, dtype=bool)
        keep[0] = True
        if xs.size > 1:
            # strictly below every previously kept obj2 <=> non-dominated
            keep[1:] = ys[1:] < np.minimum.accumulate(ys)[:-1]
        return ParetoFront(xs[keep], ys[keep])

    if xs.size > 1:
        ok = (xs[1:] > xs[:-1]) & (ys[1:] < ys[:-1])
        if not ok.all():
            j = int(np.flatnonzero(~ok)[0])
            ia, ib = int(order[j]), int(order[j + 1])
            raise FrontValidationError(
                ia,
                ib,
                Point(float(arr[ia, 0]), float(arr[ia, 1])),
                Point(float(arr[ib, 0]), float(arr[ib, 1])),
            )
    return ParetoFront(xs, ys)
