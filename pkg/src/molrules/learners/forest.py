"""Random forest estimator with impurity-based feature importances."""

from __future__ import annotations

import math
import warnings

import numpy as np

from ..base import ParamsMixin, check_binary_labels, check_consistent_length, check_matrix, check_vector
from .rng import substream
from .tree import build_tree, tree_importances, tree_predict

CLASSIFICATION = "classification"
REGRESSION = "regression"


class RandomForest(ParamsMixin):
    """Bagged decision trees for binary classification or regression.

    Deterministic given (inputs, params, seed): every tree draws its
    bootstrap sample and node feature subsets from its own counter-based
    substream keyed by (seed, tree index).
    """

    def __init__(
        self,
        task=CLASSIFICATION,
        n_trees=500,
        max_depth=None,
        min_samples_leaf=None,
        max_features=None,
        bootstrap=True,
        seed=0,
    ):
        self.task = task
        self.n_trees = n_trees
        self.max_depth = max_depth
        self.min_samples_leaf = min_samples_leaf
        self.max_features = max_features
        self.bootstrap = bootstrap
        self.seed = seed

    def _resolved_params(self, n_features):
        min_leaf = self.min_samples_leaf
        if min_leaf is None:
            min_leaf = 1 if self.task == CLASSIFICATION else 5
        max_features = self.max_features
        if max_features is None:
            if self.task == CLASSIFICATION:
                max_features = math.ceil(math.sqrt(n_features))
            else:
                max_features = math.ceil(n_features / 3)
        return min_leaf, max(1, min(max_features, n_features))

    def fit(self, X, y):
        if self.task not in (CLASSIFICATION, REGRESSION):
            raise ValueError(f"unknown task {self.task!r}")
        X = check_matrix(X, "X")
        if X.shape[0] < 2 or X.shape[1] == 0:
            raise ValueError(f"need at least 2 rows and 1 feature, got shape {X.shape}")
        if self.task == CLASSIFICATION:
            y = check_binary_labels(y, "y")
            if len(np.unique(y)) < 2:
                warnings.warn(
                    "single-class training labels; forest degenerates to constant leaves",
                    stacklevel=2,
                )
        else:
            y = check_vector(y, "y")
        check_consistent_length(X, y)

        n, r = X.shape
        min_leaf, max_features = self._resolved_params(r)
        self.n_features_ = r
        self.trees_ = []
        raw_importances = np.zeros(r)
        for t in range(self.n_trees):
            rng = substream(self.seed, t)
            if self.bootstrap:
                indices = rng.integers(0, n, size=n)
            else:
                indices = np.arange(n)
            tree = build_tree(
                X[indices],
                y[indices],
                self.task,
                self.max_depth,
                min_leaf,
                max_features,
                rng,
            )
            self.trees_.append(tree)
            raw_importances += tree_importances(tree, r)
        raw_importances /= self.n_trees
        total = raw_importances.sum()
        self.feature_importances_ = (
            raw_importances / total if total > 0 else raw_importances
        )
        return self

    def _check_fitted(self):
        if not hasattr(self, "trees_"):
            raise RuntimeError("forest is not fitted")

    def _check_width(self, X):
        if X.shape[1] != self.n_features_:
            raise ValueError(
                f"feature dimension mismatch: model has {self.n_features_}, input has {X.shape[1]}"
            )

    def predict_proba(self, X):
        """Mean of leaf class-probability vectors, shape (n, 2)."""
        self._check_fitted()
        if self.task != CLASSIFICATION:
            raise RuntimeError("predict_proba is only defined for classification")
        X = check_matrix(X, "X")
        self._check_width(X)
        out = np.zeros((X.shape[0], 2))
        for i, x in enumerate(X):
            for tree in self.trees_:
                out[i] += tree_predict(tree, x)
        return out / len(self.trees_)

    def predict(self, X):
        self._check_fitted()
        X = check_matrix(X, "X")
        self._check_width(X)
        if self.task == CLASSIFICATION:
            return (self.predict_proba(X)[:, 1] >= 0.5).astype(int)
        out = np.zeros(X.shape[0])
        for i, x in enumerate(X):
            for tree in self.trees_:
                out[i] += tree_predict(tree, x)
        return out / len(self.trees_)
