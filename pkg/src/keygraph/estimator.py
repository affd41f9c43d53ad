"""Scikit-learn style front door for keyframe selection.

``KeyframeSampler`` wraps the functional pipeline (feature validation, path
graph construction, disc-alignment sampling) behind the usual fit/transform
surface so it can sit inside sklearn tooling.  The estimator is transductive:
fitting selects rows of the training matrix itself, and transform returns
those rows.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .graph import build_spg, validate_features
from .sampler import SamplerParams, budgeted_sample, partition_sample

__all__ = ["KeyframeSampler"]


class KeyframeSampler(TransformerMixin, BaseEstimator):
    """Select representative rows of a feature sequence.

    Exactly one of ``budget`` and ``threshold`` must be set.  A budget asks
    for at most that many keyframes (threshold found by binary search); a
    threshold asks for the sparsest selection whose spectral certificate
    reaches it.

    Parameters
    ----------
    budget : int or None
        Maximum number of keyframes to select.
    threshold : float or None
        Disc alignment threshold T in (0, 1).
    mu : float
        Smoothness weight of the coefficient matrix, > 0.
    epsilon : float
        Binary-search precision used in budget mode.
    tol : float
        Comparison slack for disc clearing tests; 0 keeps arithmetic strict.

    Attributes
    ----------
    sample_indices_ : ndarray of shape (n_selected,)
        Row indices of the selected keyframes, ascending.
    subgraph_spans_ : tuple of (int, int)
        Inclusive row ranges of the certified sub-graphs, in order.
    labels_ : ndarray of shape (n_rows,)
        Sub-graph id of every row.
    threshold_used_ : float or None
        Threshold that produced the selection (None when the budget already
        covered every row).
    budget_infeasible_ : bool
        True when no probed threshold met the budget and the sparsest
        selection was returned instead.
    n_features_in_ : int
        Feature dimension seen during fit.
    """

    def __init__(
        self,
        budget: int | None = None,
        threshold: float | None = None,
        mu: float = 0.01,
        epsilon: float = 1e-7,
        tol: float = 0.0,
    ):
        self.budget = budget
        self.threshold = threshold
        self.mu = mu
        self.epsilon = epsilon
        self.tol = tol

    def fit(self, X, y=None):
        """Build the similarity path graph of X and select keyframes."""
        X = check_array(X, dtype=np.float64)
        X = validate_features(X)
        if (self.budget is None) == (self.threshold is None):
            raise ValueError("set exactly one of budget and threshold")
        graph = build_spg(X)
        if self.budget is not None:
            result = budgeted_sample(graph, self.budget, self.mu, self.epsilon)
        else:
            params = SamplerParams(self.mu, self.threshold, self.epsilon, self.tol)
            result = partition_sample(graph, params)
        labels = np.empty(graph.n, dtype=int)
        for block, (lo, hi) in enumerate(result.subgraphs):
            labels[lo : hi + 1] = block
        self.n_features_in_ = X.shape[1]
        self.selection_ = result
        self.sample_indices_ = result.samples
        self.subgraph_spans_ = result.subgraphs
        self.labels_ = labels
        self.threshold_used_ = result.T_used
        self.budget_infeasible_ = result.budget_infeasible
        return self

    def _check_same_rows(self, X) -> np.ndarray:
        check_is_fitted(self, "sample_indices_")
        X = check_array(X, dtype=np.float64)
        if X.shape[0] != self.labels_.shape[0]:
            raise ValueError(
                f"this estimator selected rows of a {self.labels_.shape[0]}-row "
                f"matrix and cannot be applied to {X.shape[0]} rows"
            )
        return X

    def transform(self, X) -> np.ndarray:
        """Return the selected keyframe rows of X."""
        X = self._check_same_rows(X)
        return X[self.sample_indices_]

    def predict(self, X) -> np.ndarray:
        """Sub-graph id of every row of X."""
        self._check_same_rows(X)
        return self.labels_.copy()

    def fit_predict(self, X, y=None) -> np.ndarray:
        """Fit on X and return every row's sub-graph id."""
        return self.fit(X).labels_.copy()

    def get_support(self, indices: bool = False) -> np.ndarray:
        """Selected rows as a boolean mask, or as indices when asked."""
        check_is_fitted(self, "sample_indices_")
        if indices:
            return self.sample_indices_.copy()
        mask = np.zeros(self.labels_.shape[0], dtype=bool)
        mask[self.sample_indices_] = True
        return mask
