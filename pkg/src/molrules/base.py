"""Estimator plumbing: parameter introspection and input validation.

Estimators in this package follow the scikit-learn protocol (``fit`` /
``predict`` / ``transform``, ``get_params`` / ``set_params``) so they can
be dropped into pipelines and cloned by tools that expect it, without
this package depending on scikit-learn itself.
"""

from __future__ import annotations

import inspect

import numpy as np


class ParamsMixin:
    """get_params/set_params backed by the ``__init__`` signature.

    Subclasses must store every constructor argument on ``self`` under
    the same name, which is also what makes ``set_params`` total.
    """

    @classmethod
    def _param_names(cls):
        sig = inspect.signature(cls.__init__)
        return [
            name
            for name, p in sig.parameters.items()
            if name != "self" and p.kind not in (p.VAR_POSITIONAL, p.VAR_KEYWORD)
        ]

    def get_params(self, deep=True):
        return {name: getattr(self, name) for name in self._param_names()}

    def set_params(self, **params):
        valid = set(self._param_names())
        for name, value in params.items():
            if name not in valid:
                raise ValueError(
                    f"invalid parameter {name!r} for {type(self).__name__}; "
                    f"valid parameters: {sorted(valid)}"
                )
            setattr(self, name, value)
        return self

    def __repr__(self):
        args = ", ".join(f"{k}={v!r}" for k, v in self.get_params().items())
        return f"{type(self).__name__}({args})"


def check_matrix(X, name="X"):
    """Coerce to a 2-D float array with finite entries."""
    arr = np.asarray(X, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def check_vector(y, name="y"):
    arr = np.asarray(y, dtype=float).ravel()
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def check_binary_labels(y, name="y"):
    arr = check_vector(y, name)
    values = set(np.unique(arr).tolist())
    if not values <= {0.0, 1.0}:
        raise ValueError(f"{name} must contain only 0/1 labels, got {sorted(values)}")
    return arr.astype(int)


def check_consistent_length(X, y):
    if len(X) != len(y):
        raise ValueError(f"inconsistent lengths: {len(X)} rows vs {len(y)} labels")
