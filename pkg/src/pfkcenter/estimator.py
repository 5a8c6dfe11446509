"""scikit-learn style front clustering estimator.

Wraps the exact solver behind the familiar ``fit`` / ``predict`` surface
so front clustering drops into pipelines, grid searches, and anything
else expecting the estimator contract.
"""

from __future__ import annotations

import numbers

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.exceptions import NotFittedError
from sklearn.utils.validation import check_array

from .cost import Variant
from .dp import assemble_solution, solve
from .front import build_front
from .refine import backtrack_max_index, balance_partition

__all__ = ["ParetoKCenter"]


class ParetoKCenter(ClusterMixin, BaseEstimator):
    """Exact K-center clustering for 2d Pareto front data.

    The rows of X must be mutually non-dominated under componentwise
    minimization (a 2d Pareto front); set ``sanitize=True`` to drop
    duplicates and dominated rows instead of raising.  Clustering is
    exact: the maximum cluster radius is minimized over all partitions.

    Parameters
    ----------
    n_clusters : int, default=3
        Number of covering balls.
    variant : {"continuous", "discrete"}, default="continuous"
        Whether ball centers are free points of the plane or input rows.
    backtrack : {"min", "max"}, default="min"
        Which optimal partition to report: minimal or maximal boundaries.
    balance : {None, "radius", "cardinality"}, default=None
        Optional post-pass evening out the clusters without exceeding
        the optimal radius.
    sanitize : bool, default=False
        Drop duplicate and dominated rows instead of raising.
    workers : int, default=1
        Threads used per DP line; any value yields identical results.

    Attributes
    ----------
    front_ : ParetoFront
        The validated, sorted front that was clustered.
    solution_ : Solution
        Full solver output (clusters as index ranges, centers, stats).
    cluster_centers_ : ndarray of shape (effective_k, 2)
    labels_ : ndarray of shape (n_samples,)
        Cluster of each input row.  Rows dropped by ``sanitize`` get the
        label of their nearest center.
    radius_ : float
        Optimal covering radius.
    radius_sq_ : float

    Examples
    --------
    >>> import numpy as np
    >>> X = np.array([[0.0, 3.0], [1.0, 2.0], [2.0, 1.0], [3.0, 0.0]])
    >>> model = ParetoKCenter(n_clusters=2).fit(X)
    >>> model.labels_
    array([0, 0, 1, 1])
    """

    def __init__(
        self,
        n_clusters: int = 3,
        *,
        variant: str = "continuous",
        backtrack: str = "min",
        balance: str | None = None,
        sanitize: bool = False,
        workers: int = 1,
    ):
        self.n_clusters = n_clusters
        self.variant = variant
        self.backtrack = backtrack
        self.balance = balance
        self.sanitize = sanitize
        self.workers = workers

    def _validate_params_(self):
        if not isinstance(self.n_clusters, numbers.Integral) or self.n_clusters < 1:
            raise ValueError(
                f"n_clusters must be a positive integer, got {self.n_clusters!r}"
            )
        Variant(self.variant)
        if self.backtrack not in ("min", "max"):
            raise ValueError(f"backtrack must be 'min' or 'max', got {self.backtrack!r}")
        if self.balance not in (None, "radius", "cardinality"):
            raise ValueError(
                f"balance must be None, 'radius' or 'cardinality', got {self.balance!r}"
            )
        if not isinstance(self.workers, numbers.Integral) or self.workers < 1:
            raise ValueError(f"workers must be a positive integer, got {self.workers!r}")

    def _check_X(self, X):
        X = check_array(X, dtype=np.float64, ensure_min_samples=1)
        if X.shape[1] != 2:
            raise ValueError(
                f"ParetoKCenter expects exactly 2 objective columns, got {X.shape[1]}"
            )
        return X

    def fit(self, X, y=None):
        """Cluster the rows of X.

        Parameters
        ----------
        X : array-like of shape (n_samples, 2)
        y : ignored

        Returns
        -------
        self
        """
        self._validate_params_()
        X = self._check_X(X)
        variant = Variant(self.variant)
        front = build_front(X, sanitize=self.sanitize)
        sol = solve(front, self.n_clusters, variant, workers=self.workers)
        clusters = list(sol.clusters)
        if self.backtrack == "max":
            clusters = backtrack_max_index(
                front, self.n_clusters, sol.opt_radius_sq, variant, sol.stats
            )
        if self.balance is not None and len(clusters) > 1:
            clusters = balance_partition(
                front, clusters, variant, self.balance, sol.stats
            )
        if clusters != list(sol.clusters):
            sol = assemble_solution(
                front, clusters, self.n_clusters, variant, sol.stats
            )
        self.front_ = front
        self.solution_ = sol
        self.radius_ = sol.opt_radius
        self.radius_sq_ = sol.opt_radius_sq
        self.cluster_centers_ = np.array(
            [list(res.center) for res in sol.centers], dtype=np.float64
        )
        self.n_features_in_ = 2
        self.labels_ = self._labels_for(X)
        return self

    def _labels_for(self, X):
        sol = self.solution_
        front_labels = sol.labels()
        position = {
            (float(x), float(y)): i
            for i, (x, y) in enumerate(zip(self.front_.xs, self.front_.ys))
        }
        labels = np.empty(len(X), dtype=np.intp)
        missing = []
        for r, (x, y) in enumerate(X):
            i = position.get((float(x), float(y)))
            if i is None:
                missing.append(r)
            else:
                labels[r] = front_labels[i]
        if missing:
            labels[missing] = self._nearest_center(X[missing])
        return labels

    def _nearest_center(self, X):
        dx = X[:, 0:1] - self.cluster_centers_[None, :, 0]
        dy = X[:, 1:2] - self.cluster_centers_[None, :, 1]
        return np.argmin(dx * dx + dy * dy, axis=1)

    def _check_fitted(self):
        if not hasattr(self, "solution_"):
            raise NotFittedError(
                "This ParetoKCenter instance is not fitted yet; call fit first."
            )

    def predict(self, X):
        """Nearest-center assignment for new points.

        Note this is the metric assignment; points of the fitted front on
        a cluster boundary keep their interval cluster in ``labels_`` but
        may sit closer to the neighboring center.
        """
        self._check_fitted()
        X = self._check_X(X)
        return self._nearest_center(X)

    def transform(self, X):
        """Distances from each row to each cluster center."""
        self._check_fitted()
        X = self._check_X(X)
        dx = X[:, 0:1] - self.cluster_centers_[None, :, 0]
        dy = X[:, 1:2] - self.cluster_centers_[None, :, 1]
        return np.sqrt(dx * dx + dy * dy)

    def fit_transform(self, X, y=None):
        return self.fit(X).transform(X)
