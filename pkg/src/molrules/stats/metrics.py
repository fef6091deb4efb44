"""Evaluation metrics: AUC-ROC (rank formulation), RMSE, MAE."""

from __future__ import annotations

import math

import numpy as np

from ..base import check_binary_labels, check_vector
from .ranktests import rankdata


def auc_roc(scores, labels) -> float:
    """Probability a random positive outscores a random negative; ties
    count one half. Requires both classes present."""
    scores = check_vector(scores, "scores")
    labels = check_binary_labels(labels, "labels")
    if len(scores) != len(labels):
        raise ValueError("scores and labels must have equal length")
    n_pos = int(np.sum(labels == 1))
    n_neg = int(np.sum(labels == 0))
    if n_pos == 0 or n_neg == 0:
        raise ValueError("both classes must be present to compute AUC")
    ranks = rankdata(scores)
    r_pos = float(np.sum(ranks[labels == 1]))
    u_pos = r_pos - n_pos * (n_pos + 1) / 2.0
    return u_pos / (n_pos * n_neg)


def rmse(pred, truth) -> float:
    pred = check_vector(pred, "pred")
    truth = check_vector(truth, "truth")
    if len(pred) != len(truth):
        raise ValueError(f"length mismatch: {len(pred)} vs {len(truth)}")
    if len(pred) == 0:
        raise ValueError("need at least one value")
    return math.sqrt(float(np.mean((pred - truth) ** 2)))


def mae(pred, truth) -> float:
    pred = check_vector(pred, "pred")
    truth = check_vector(truth, "truth")
    if len(pred) != len(truth):
        raise ValueError(f"length mismatch: {len(pred)} vs {len(truth)}")
    if len(pred) == 0:
        raise ValueError("need at least one value")
    return float(np.mean(np.abs(pred - truth)))
