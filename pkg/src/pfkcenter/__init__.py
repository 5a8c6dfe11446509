"""Exact K-center clustering of 2d Pareto fronts.

Both the continuous variant (ball centers anywhere in the plane) and the
discrete variant (centers restricted to input points) are solved to
optimality in O(K n log^(1+g) n) time and O(n) memory, where g is 0 for
continuous and 1 for discrete.  The package exposes a functional API, a
scikit-learn style estimator (:class:`ParetoKCenter`), and a CLI
(``pfkcenter``).
"""

from .cost import (
    CostResult,
    InvalidIntervalError,
    OpStats,
    Variant,
    cost,
    continuous_cost,
    discrete_cost,
    endpoint_max_sq,
)
from .dp import (
    DpLine,
    InternalConsistencyError,
    Solution,
    backtrack_min_index,
    dp_first_line,
    dp_line_entry,
    solve,
    solve_one_center,
)
from .estimator import ParetoKCenter
from .front import (
    Dominance,
    FrontValidationError,
    IntervalCluster,
    ParetoFront,
    Point,
    build_front,
    compare,
    distance,
    distance_sq,
)
from .generate import InstanceSpec, generate_front
from .refine import (
    KCurve,
    backtrack_max_index,
    balance_partition,
    elbow_select,
    k_curve,
)

__version__ = "0.1.0"

__all__ = [
    "CostResult",
    "Dominance",
    "DpLine",
    "FrontValidationError",
    "InstanceSpec",
    "IntervalCluster",
    "InternalConsistencyError",
    "InvalidIntervalError",
    "KCurve",
    "OpStats",
    "ParetoFront",
    "ParetoKCenter",
    "Point",
    "Solution",
    "Variant",
    "backtrack_max_index",
    "backtrack_min_index",
    "balance_partition",
    "build_front",
    "compare",
    "continuous_cost",
    "cost",
    "discrete_cost",
    "distance",
    "distance_sq",
    "dp_first_line",
    "dp_line_entry",
    "elbow_select",
    "endpoint_max_sq",
    "generate_front",
    "k_curve",
    "solve",
    "solve_one_center",
]
