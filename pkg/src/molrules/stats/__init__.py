"""Statistical validation of rules and evaluation metrics."""

from .metrics import auc_roc, mae, rmse
from .ranktests import TestResult, mann_whitney_u, rankdata, slope_t_test
from .special import betainc, erf, erfc, normal_sf, student_sf
from .verdicts import (
    CATEGORIES,
    INSIGNIFICANT,
    SIGNIFICANCE_LEVEL,
    SIGNIFICANT_NOT_FOUND,
    SIGNIFICANT_SUPPORTED,
    SIGNIFICANT_UNREVIEWED,
    RuleVerdict,
    classify_rule,
    load_annotations,
    verdict_to_obj,
    verdicts_to_json,
    write_verdicts_csv,
)

__all__ = [
    "CATEGORIES",
    "INSIGNIFICANT",
    "RuleVerdict",
    "SIGNIFICANCE_LEVEL",
    "SIGNIFICANT_NOT_FOUND",
    "SIGNIFICANT_SUPPORTED",
    "SIGNIFICANT_UNREVIEWED",
    "TestResult",
    "auc_roc",
    "betainc",
    "classify_rule",
    "erf",
    "erfc",
    "load_annotations",
    "mae",
    "mann_whitney_u",
    "normal_sf",
    "rankdata",
    "rmse",
    "slope_t_test",
    "student_sf",
    "verdict_to_obj",
    "verdicts_to_json",
    "write_verdicts_csv",
]
