"""Closed-form simple regression and penalized logistic regression."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from ..base import check_binary_labels, check_consistent_length, check_matrix, check_vector


@dataclass(frozen=True)
class OLSFit:
    """Simple (one-feature) least squares fit with t-test ingredients."""

    slope: float
    intercept: float
    residual_variance: float  # SSR / (n - 2)
    se_slope: float
    n: int

    def predict(self, x):
        return self.intercept + self.slope * np.asarray(x, dtype=float)


def fit_ols(x, y) -> OLSFit:
    """Least-squares line through (x, y); requires n >= 3 and var(x) > 0."""
    x = check_vector(x, "x")
    y = check_vector(y, "y")
    check_consistent_length(x, y)
    n = len(x)
    if n < 3:
        raise ValueError(f"need at least 3 points for a slope fit, got {n}")
    x_mean = x.mean()
    sxx = float(np.sum((x - x_mean) ** 2))
    if sxx <= 0.0:
        raise ValueError("x has zero variance")
    y_mean = y.mean()
    slope = float(np.sum((x - x_mean) * (y - y_mean)) / sxx)
    intercept = float(y_mean - slope * x_mean)
    residuals = y - (intercept + slope * x)
    ssr = float(np.sum(residuals**2))
    residual_variance = ssr / (n - 2)
    se_slope = float(np.sqrt(residual_variance / sxx))
    return OLSFit(slope, intercept, residual_variance, se_slope, n)


def sigmoid(z):
    out = np.empty_like(z, dtype=float)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def logistic_loss_and_grad(coefficients, intercept, X, y, l2):
    """Penalized negative log-likelihood and its analytic gradient.

    The L2 term penalizes coefficients only, never the intercept.
    Returns (loss, grad_coefficients, grad_intercept).
    """
    z = X @ coefficients + intercept
    # log(1 + exp(z)) - y*z, computed stably
    loss = float(np.sum(np.logaddexp(0.0, z) - y * z)) + 0.5 * l2 * float(
        np.sum(coefficients**2)
    )
    p = sigmoid(z)
    grad_w = X.T @ (p - y) + l2 * coefficients
    grad_b = float(np.sum(p - y))
    return loss, grad_w, grad_b


@dataclass(frozen=True)
class LogisticFit:
    coefficients: np.ndarray
    intercept: float
    iterations: int
    converged: bool
    l2: float = 0.0

    def decision(self, X):
        X = check_matrix(X, "X")
        return X @ self.coefficients + self.intercept

    def predict_proba(self, X):
        return sigmoid(self.decision(X))

    def predict(self, X):
        return (self.predict_proba(X) >= 0.5).astype(int)


def fit_logistic(X, y, l2: float = 0.0, tolerance: float = 1e-8, max_iter: int = 100) -> LogisticFit:
    """Penalized maximum likelihood via iteratively reweighted least squares.

    Returns the fit with ``converged=False`` (and a warning) if the
    gradient norm has not dropped below ``tolerance`` in ``max_iter``
    Newton steps; coefficients are still usable.
    """
    X = check_matrix(X, "X")
    y = check_binary_labels(y, "y").astype(float)
    check_consistent_length(X, y)
    if l2 < 0:
        raise ValueError("l2 penalty must be non-negative")
    n, r = X.shape
    w = np.zeros(r)
    b = 0.0
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        z = X @ w + b
        p = sigmoid(z)
        grad_w = X.T @ (p - y) + l2 * w
        grad_b = float(np.sum(p - y))
        grad_norm = float(np.sqrt(np.sum(grad_w**2) + grad_b**2))
        if grad_norm < tolerance:
            converged = True
            iterations -= 1
            break
        weights = np.clip(p * (1.0 - p), 1e-10, None)
        design = np.hstack([np.ones((n, 1)), X])
        hessian = design.T @ (design * weights[:, None])
        hessian[1:, 1:] += l2 * np.eye(r)
        gradient = np.concatenate([[grad_b], grad_w])
        try:
            step = np.linalg.solve(hessian, gradient)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(hessian, gradient, rcond=None)[0]
        b -= float(step[0])
        w -= step[1:]
    if not converged:
        warnings.warn(
            f"logistic fit did not converge in {max_iter} iterations", stacklevel=2
        )
    return LogisticFit(coefficients=w, intercept=b, iterations=iterations, converged=converged, l2=l2)
