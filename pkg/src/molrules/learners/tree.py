"""Decision trees for the forest: Gini or variance-reduction splits.

Split search is deterministic: candidate features are evaluated in
ascending index order, thresholds at midpoints between consecutive
distinct sorted values in ascending order, and only a strictly larger
impurity decrease replaces the incumbent, so equal-gain ties resolve to
the lowest feature index, then the smallest threshold.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MIN_GAIN = 1e-12


@dataclass
class TreeNode:
    n_samples: int
    impurity: float
    value: np.ndarray | float  # class-probability vector or mean
    feature: int = -1
    threshold: float = 0.0
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None


def _midpoint(xs: np.ndarray, pos: int) -> float:
    """Split threshold between two consecutive distinct sorted values.

    Falls back to the lower value when the float midpoint rounds up to
    the upper one, so a `<= threshold` test always separates them.
    """
    low, high = float(xs[pos]), float(xs[pos + 1])
    mid = (low + high) / 2.0
    return mid if mid < high else low


def _gini(counts: np.ndarray) -> float:
    total = counts.sum()
    if total == 0:
        return 0.0
    p = counts / total
    return float(1.0 - np.sum(p * p))


def _best_split_classification(X, y, feature_ids, min_leaf):
    """Returns (feature, threshold, gain-weighted impurity decrease) or None."""
    n = len(y)
    parent_counts = np.array([np.sum(y == 0), np.sum(y == 1)], dtype=float)
    parent_impurity = _gini(parent_counts)
    if parent_impurity <= 0.0:
        return None
    best = None
    for f in feature_ids:
        col = X[:, f]
        order = np.argsort(col, kind="mergesort")
        xs = col[order]
        ys = y[order]
        distinct = np.nonzero(xs[1:] > xs[:-1])[0]  # split after position i
        if distinct.size == 0:
            continue
        ones_prefix = np.cumsum(ys)
        n_left = distinct + 1
        n_right = n - n_left
        valid = (n_left >= min_leaf) & (n_right >= min_leaf)
        if not np.any(valid):
            continue
        n_left = n_left[valid]
        n_right = n_right[valid]
        pos = distinct[valid]
        ones_left = ones_prefix[pos]
        ones_right = ones_prefix[-1] - ones_left
        p1_l = ones_left / n_left
        p1_r = ones_right / n_right
        gini_l = 1.0 - p1_l**2 - (1.0 - p1_l) ** 2
        gini_r = 1.0 - p1_r**2 - (1.0 - p1_r) ** 2
        decrease = parent_impurity - (n_left * gini_l + n_right * gini_r) / n
        k = int(np.argmax(decrease))
        gain = float(decrease[k])
        if gain > _MIN_GAIN and (best is None or gain > best[2] + _MIN_GAIN):
            best = (f, _midpoint(xs, pos[k]), gain)
    return best


def _best_split_regression(X, y, feature_ids, min_leaf):
    n = len(y)
    parent_impurity = float(np.var(y))
    if parent_impurity <= 0.0:
        return None
    best = None
    for f in feature_ids:
        col = X[:, f]
        order = np.argsort(col, kind="mergesort")
        xs = col[order]
        ys = y[order]
        distinct = np.nonzero(xs[1:] > xs[:-1])[0]
        if distinct.size == 0:
            continue
        csum = np.cumsum(ys)
        csum2 = np.cumsum(ys**2)
        n_left = distinct + 1
        n_right = n - n_left
        valid = (n_left >= min_leaf) & (n_right >= min_leaf)
        if not np.any(valid):
            continue
        n_left = n_left[valid]
        n_right = n_right[valid]
        pos = distinct[valid]
        sum_l = csum[pos]
        sum2_l = csum2[pos]
        sum_r = csum[-1] - sum_l
        sum2_r = csum2[-1] - sum2_l
        var_l = np.maximum(sum2_l / n_left - (sum_l / n_left) ** 2, 0.0)
        var_r = np.maximum(sum2_r / n_right - (sum_r / n_right) ** 2, 0.0)
        decrease = parent_impurity - (n_left * var_l + n_right * var_r) / n
        k = int(np.argmax(decrease))
        gain = float(decrease[k])
        if gain > _MIN_GAIN and (best is None or gain > best[2] + _MIN_GAIN):
            best = (f, _midpoint(xs, pos[k]), gain)
    return best


def _leaf_payload(y, task):
    if task == "classification":
        counts = np.array([np.sum(y == 0), np.sum(y == 1)], dtype=float)
        return counts / counts.sum()
    return float(np.mean(y))


def _impurity(y, task):
    if task == "classification":
        return _gini(np.array([np.sum(y == 0), np.sum(y == 1)], dtype=float))
    return float(np.var(y))


def build_tree(X, y, task, max_depth, min_samples_leaf, max_features, rng) -> TreeNode:
    """Grow one tree; ``rng`` drives the per-node feature subsets."""
    n_features = X.shape[1]

    def make_node(indices, depth):
        y_node = y[indices]
        node = TreeNode(
            n_samples=len(indices),
            impurity=_impurity(y_node, task),
            value=_leaf_payload(y_node, task),
        )
        if (
            node.impurity <= 0.0
            or (max_depth is not None and depth >= max_depth)
            or len(indices) < 2 * min_samples_leaf
            or len(indices) < 2
        ):
            return node
        if max_features >= n_features:
            feature_ids = np.arange(n_features)
        else:
            feature_ids = np.sort(rng.choice(n_features, size=max_features, replace=False))
        X_node = X[indices]
        if task == "classification":
            split = _best_split_classification(X_node, y_node, feature_ids, min_samples_leaf)
        else:
            split = _best_split_regression(X_node, y_node, feature_ids, min_samples_leaf)
        if split is None:
            return node
        feature, threshold, _ = split
        node.feature = int(feature)
        node.threshold = float(threshold)
        mask = X[indices, feature] <= threshold
        node.left = make_node(indices[mask], depth + 1)
        node.right = make_node(indices[~mask], depth + 1)
        return node

    return make_node(np.arange(X.shape[0]), 0)


def tree_predict(node: TreeNode, x: np.ndarray):
    while not node.is_leaf:
        node = node.left if x[node.feature] <= node.threshold else node.right
    return node.value


def tree_importances(root: TreeNode, n_features: int) -> np.ndarray:
    """Raw mean-decrease-in-impurity per feature for one tree."""
    out = np.zeros(n_features)
    total = root.n_samples
    stack = [root]
    while stack:
        node = stack.pop()
        if node.is_leaf:
            continue
        child_impurity = (
            node.left.n_samples * node.left.impurity
            + node.right.n_samples * node.right.impurity
        ) / node.n_samples
        out[node.feature] += (node.n_samples / total) * (node.impurity - child_impurity)
        stack.append(node.left)
        stack.append(node.right)
    return out
