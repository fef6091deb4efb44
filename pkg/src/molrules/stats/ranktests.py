"""Nonparametric and regression-slope hypothesis tests."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..base import check_vector
from ..learners.linear import fit_ols
from .special import normal_sf, student_sf


@dataclass(frozen=True)
class TestResult:
    statistic: float
    p_value: float
    method: str  # "mwu" | "slope_t"
    n: tuple[int, ...]
    tie_correction_applied: bool = False
    degenerate: bool = False
    exact_fit: bool = False

    __test__ = False  # not a pytest class, despite the name


def rankdata(values: np.ndarray) -> np.ndarray:
    """Midranks: ties receive the mean of the ranks they span."""
    order = np.argsort(values, kind="mergesort")
    ranks = np.empty(len(values), dtype=float)
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def mann_whitney_u(a, b) -> TestResult:
    """Two-sided Mann-Whitney U test; U is reported for sample ``a``.

    Uses the normal approximation with midranks, tie correction, and a
    0.5 continuity correction. All-identical pooled values are flagged
    degenerate with p = 1.
    """
    a = check_vector(a, "a")
    b = check_vector(b, "b")
    n1, n2 = len(a), len(b)
    if n1 < 1 or n2 < 1:
        raise ValueError("both samples must be non-empty")
    pooled = np.concatenate([a, b])
    ranks = rankdata(pooled)
    r1 = float(np.sum(ranks[:n1]))
    u1 = r1 - n1 * (n1 + 1) / 2.0

    n = n1 + n2
    _, counts = np.unique(pooled, return_counts=True)
    tie_term = float(np.sum(counts**3 - counts))
    has_ties = bool(np.any(counts > 1))
    variance = (n1 * n2 / 12.0) * ((n + 1) - tie_term / (n * (n - 1.0)))
    if variance <= 0.0:
        return TestResult(
            statistic=u1,
            p_value=1.0,
            method="mwu",
            n=(n1, n2),
            tie_correction_applied=has_ties,
            degenerate=True,
        )
    mean = n1 * n2 / 2.0
    z = max(abs(u1 - mean) - 0.5, 0.0) / math.sqrt(variance)
    p = min(1.0, 2.0 * normal_sf(z))
    return TestResult(
        statistic=u1,
        p_value=p,
        method="mwu",
        n=(n1, n2),
        tie_correction_applied=has_ties,
    )


_EXACT_FIT_VARIANCE = 1e-12


def slope_t_test(x, y) -> TestResult:
    """Two-sided test of the simple-regression slope against zero.

    t = slope / SE(slope) with n - 2 degrees of freedom. An (effectively)
    exact fit reports p = 0 with the exact-fit flag; a constant y is
    degenerate with p = 1.
    """
    fit = fit_ols(x, y)
    n = fit.n
    if fit.residual_variance < _EXACT_FIT_VARIANCE:
        if abs(fit.slope) < 1e-12:
            return TestResult(
                statistic=0.0,
                p_value=1.0,
                method="slope_t",
                n=(n,),
                degenerate=True,
            )
        return TestResult(
            statistic=math.inf if fit.slope > 0 else -math.inf,
            p_value=0.0,
            method="slope_t",
            n=(n,),
            exact_fit=True,
        )
    t = fit.slope / fit.se_slope
    p = min(1.0, 2.0 * student_sf(abs(t), n - 2))
    return TestResult(statistic=t, p_value=p, method="slope_t", n=(n,))
