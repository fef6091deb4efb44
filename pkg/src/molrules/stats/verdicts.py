"""Three-way rule categorization from test results and literature flags."""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, dataclass

from .ranktests import TestResult

SIGNIFICANCE_LEVEL = 0.05

SIGNIFICANT_SUPPORTED = "significant+supported"
SIGNIFICANT_NOT_FOUND = "significant+not-found"
SIGNIFICANT_UNREVIEWED = "significant+unreviewed"
INSIGNIFICANT = "insignificant"

CATEGORIES = (
    SIGNIFICANT_SUPPORTED,
    SIGNIFICANT_NOT_FOUND,
    SIGNIFICANT_UNREVIEWED,
    INSIGNIFICANT,
)


@dataclass(frozen=True)
class RuleVerdict:
    rule_id: str
    test: TestResult
    significant: bool
    literature_supported: bool | None  # None when no annotation was given
    category: str


def classify_rule(test: TestResult, literature_supported: bool | None, rule_id: str = "") -> RuleVerdict:
    """p < 0.05 splits on the literature flag; insignificance ignores it.

    A missing annotation (None) yields the unreviewed category instead
    of guessing either way.
    """
    significant = test.p_value < SIGNIFICANCE_LEVEL
    if not significant:
        category = INSIGNIFICANT
    elif literature_supported is None:
        category = SIGNIFICANT_UNREVIEWED
    elif literature_supported:
        category = SIGNIFICANT_SUPPORTED
    else:
        category = SIGNIFICANT_NOT_FOUND
    return RuleVerdict(
        rule_id=rule_id,
        test=test,
        significant=significant,
        literature_supported=literature_supported,
        category=category,
    )


def load_annotations(path) -> dict[str, tuple[bool, str]]:
    """CSV of ``rule_id,supported,citation_note`` -> {id: (flag, note)}."""
    out: dict[str, tuple[bool, str]] = {}
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        required = {"rule_id", "supported"}
        if reader.fieldnames is None or not required <= set(reader.fieldnames):
            raise ValueError(f"{path}: annotation file needs columns rule_id,supported[,citation_note]")
        for row in reader:
            flag = str(row["supported"]).strip().lower() in ("1", "true", "yes", "y")
            out[row["rule_id"].strip()] = (flag, (row.get("citation_note") or "").strip())
    return out


def verdict_to_obj(v: RuleVerdict) -> dict:
    obj = asdict(v)
    obj["test"]["n"] = list(v.test.n)
    return obj


def verdicts_to_json(verdicts) -> str:
    return json.dumps([verdict_to_obj(v) for v in verdicts], indent=2, sort_keys=True)


def write_verdicts_csv(verdicts, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["rule_id", "method", "statistic", "p_value", "significant", "literature_supported", "category"]
        )
        for v in verdicts:
            writer.writerow(
                [
                    v.rule_id,
                    v.test.method,
                    f"{v.test.statistic:.6g}",
                    f"{v.test.p_value:.6g}",
                    int(v.significant),
                    "" if v.literature_supported is None else int(v.literature_supported),
                    v.category,
                ]
            )
