"""Model persistence as a versioned JSON document.

The document embeds the estimator kind, constructor params, seed, and
the full tree/coefficient payload, so a load plus predict reproduces
the original model exactly. Serialization is canonical (sorted keys,
repr floats), which makes file hashes usable as determinism checks.
"""

from __future__ import annotations

import json

import numpy as np

from ..errors import ModelFormatError
from .forest import RandomForest
from .linear import LogisticFit, OLSFit
from .tree import TreeNode

FORMAT = "molrules-model"
VERSION = 1


def _tree_to_obj(node: TreeNode):
    if node.is_leaf:
        value = node.value.tolist() if isinstance(node.value, np.ndarray) else node.value
        return {"n": node.n_samples, "imp": node.impurity, "value": value}
    return {
        "n": node.n_samples,
        "imp": node.impurity,
        "f": node.feature,
        "t": node.threshold,
        "l": _tree_to_obj(node.left),
        "r": _tree_to_obj(node.right),
    }


def _tree_from_obj(obj, task) -> TreeNode:
    if "value" in obj:
        value = obj["value"]
        if task == "classification":
            value = np.asarray(value, dtype=float)
        return TreeNode(n_samples=obj["n"], impurity=obj["imp"], value=value)
    return TreeNode(
        n_samples=obj["n"],
        impurity=obj["imp"],
        value=None,
        feature=obj["f"],
        threshold=obj["t"],
        left=_tree_from_obj(obj["l"], task),
        right=_tree_from_obj(obj["r"], task),
    )


def model_to_document(model) -> dict:
    if isinstance(model, RandomForest):
        model._check_fitted()
        return {
            "format": FORMAT,
            "version": VERSION,
            "kind": "forest",
            "params": model.get_params(),
            "feature_count": model.n_features_,
            "importances": model.feature_importances_.tolist(),
            "trees": [_tree_to_obj(t) for t in model.trees_],
        }
    if isinstance(model, LogisticFit):
        return {
            "format": FORMAT,
            "version": VERSION,
            "kind": "logistic",
            "feature_count": int(len(model.coefficients)),
            "coefficients": model.coefficients.tolist(),
            "intercept": model.intercept,
            "iterations": model.iterations,
            "converged": model.converged,
            "l2": model.l2,
        }
    if isinstance(model, OLSFit):
        return {
            "format": FORMAT,
            "version": VERSION,
            "kind": "ols",
            "feature_count": 1,
            "slope": model.slope,
            "intercept": model.intercept,
            "residual_variance": model.residual_variance,
            "se_slope": model.se_slope,
            "n": model.n,
        }
    raise ModelFormatError(f"cannot persist model of type {type(model).__name__}")


def model_from_document(doc: dict):
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise ModelFormatError("not a model document")
    if doc.get("version") != VERSION:
        raise ModelFormatError(f"unsupported model version {doc.get('version')!r}")
    kind = doc.get("kind")
    if kind == "forest":
        model = RandomForest(**doc["params"])
        task = model.task
        model.n_features_ = doc["feature_count"]
        model.trees_ = [_tree_from_obj(t, task) for t in doc["trees"]]
        model.feature_importances_ = np.asarray(doc["importances"], dtype=float)
        return model
    if kind == "logistic":
        return LogisticFit(
            coefficients=np.asarray(doc["coefficients"], dtype=float),
            intercept=doc["intercept"],
            iterations=doc["iterations"],
            converged=doc["converged"],
            l2=doc.get("l2", 0.0),
        )
    if kind == "ols":
        return OLSFit(
            slope=doc["slope"],
            intercept=doc["intercept"],
            residual_variance=doc["residual_variance"],
            se_slope=doc["se_slope"],
            n=doc["n"],
        )
    raise ModelFormatError(f"unknown model kind {kind!r}")


def dumps_model(model) -> str:
    return json.dumps(model_to_document(model), sort_keys=True, separators=(",", ":"))


def save_model(model, path):
    with open(path, "w") as fh:
        fh.write(dumps_model(model))


def load_model(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"malformed model file {path}: {exc}") from exc
    return model_from_document(doc)
