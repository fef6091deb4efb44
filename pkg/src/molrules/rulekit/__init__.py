"""Rule DSL, rulesets, and featurization."""

from .dsl import (
    BINARY,
    INTEGER,
    REAL,
    Count,
    DescRef,
    DivisionByZeroWarning,
    Expr,
    Has,
    Ratio,
    Sum,
    evaluate_expr,
    parse_rule,
    print_expr,
    value_kind,
)
from .featurizer import RuleFeaturizer
from .io import (
    load_ruleset,
    ruleset_from_json,
    ruleset_from_obj,
    ruleset_to_json,
    ruleset_to_obj,
    save_ruleset,
)
from .model import (
    INFERRED,
    MANUAL,
    PROVENANCES,
    SYNTHESIZED,
    FeatureMatrix,
    Rule,
    RuleSet,
    featurize,
    make_rule,
    merge_rulesets,
)

__all__ = [
    "BINARY",
    "Count",
    "DescRef",
    "DivisionByZeroWarning",
    "Expr",
    "FeatureMatrix",
    "Has",
    "INFERRED",
    "INTEGER",
    "MANUAL",
    "PROVENANCES",
    "REAL",
    "Ratio",
    "Rule",
    "RuleFeaturizer",
    "RuleSet",
    "SYNTHESIZED",
    "Sum",
    "evaluate_expr",
    "featurize",
    "load_ruleset",
    "make_rule",
    "merge_rulesets",
    "parse_rule",
    "print_expr",
    "ruleset_from_json",
    "ruleset_from_obj",
    "ruleset_to_json",
    "ruleset_to_obj",
    "save_ruleset",
    "value_kind",
]
