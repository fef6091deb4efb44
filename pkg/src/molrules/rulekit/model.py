"""Rules, rulesets, and the feature matrix they induce."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from ..molgraph import Molecule
from .dsl import Expr, evaluate_expr, parse_rule, print_expr, value_kind

SYNTHESIZED = "synthesized"
INFERRED = "inferred"
MANUAL = "manual"
PROVENANCES = (SYNTHESIZED, INFERRED, MANUAL)


@dataclass(frozen=True)
class Rule:
    id: str
    expr: Expr
    dsl: str  # canonical printed form of expr
    source_text: str
    provenance: str
    value_kind: str

    def evaluate(self, mol: Molecule, sink: list | None = None) -> float:
        return evaluate_expr(self.expr, mol, sink)


def make_rule(rule_id: str, dsl_text: str, source_text: str = "", provenance: str = MANUAL) -> Rule:
    """Parse and package a rule; the stored DSL is the canonical print."""
    if provenance not in PROVENANCES:
        raise ValueError(f"unknown provenance {provenance!r}; expected one of {PROVENANCES}")
    expr = parse_rule(dsl_text)
    return Rule(
        id=rule_id,
        expr=expr,
        dsl=print_expr(expr),
        source_text=source_text or dsl_text,
        provenance=provenance,
        value_kind=value_kind(expr),
    )


@dataclass(frozen=True)
class RuleSet:
    task: str
    rules: tuple[Rule, ...]

    def __post_init__(self):
        seen = set()
        for rule in self.rules:
            if rule.id in seen:
                raise ValueError(f"duplicate rule id {rule.id!r}")
            seen.add(rule.id)

    def __len__(self):
        return len(self.rules)

    def ids(self) -> tuple[str, ...]:
        return tuple(r.id for r in self.rules)

    def get(self, rule_id: str) -> Rule:
        for rule in self.rules:
            if rule.id == rule_id:
                return rule
        raise KeyError(rule_id)


def merge_rulesets(task: str, *rulesets: RuleSet) -> RuleSet:
    """Concatenate rulesets, dropping later rules whose expression tree
    structurally equals an earlier one (first occurrence wins)."""
    seen_exprs = []
    merged: list[Rule] = []
    for ruleset in rulesets:
        for rule in ruleset.rules:
            if any(rule.expr == e for e in seen_exprs):
                continue
            seen_exprs.append(rule.expr)
            merged.append(rule)
    return RuleSet(task=task, rules=tuple(merged))


@dataclass(frozen=True)
class FeatureMatrix:
    values: np.ndarray  # (n molecules, r rules)
    row_ids: tuple
    rule_ids: tuple[str, ...]
    warnings: tuple[tuple[int, str, str], ...] = ()  # (row index, rule id, message)

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]

    @property
    def n_rules(self) -> int:
        return self.values.shape[1]


def featurize(ruleset: RuleSet, mols: list[Molecule], row_ids=None) -> FeatureMatrix:
    """Entry (i, j) = rule_j evaluated on mol_i; row order preserved."""
    if row_ids is None:
        row_ids = tuple(range(len(mols)))
    values = np.zeros((len(mols), len(ruleset.rules)))
    collected: list[tuple[int, str, str]] = []
    for i, mol in enumerate(mols):
        for j, rule in enumerate(ruleset.rules):
            sink: list[str] = []
            values[i, j] = rule.evaluate(mol, sink)
            collected.extend((i, rule.id, message) for message in sink)
    return FeatureMatrix(
        values=values,
        row_ids=tuple(row_ids),
        rule_ids=ruleset.ids(),
        warnings=tuple(collected),
    )
