"""Ruleset persistence: pipe-delimited text and JSON."""

from __future__ import annotations

import json

from ..errors import RuleParseError, RulesetFormatError
from .model import PROVENANCES, Rule, RuleSet, make_rule

_HEADER = "# molrules ruleset v1"


def _escape(field: str) -> str:
    return (
        field.replace("\\", "\\\\")
        .replace("|", "\\|")
        .replace("\n", "\\n")
        .replace("\r", "\\r")
    )


def _split_record(line: str):
    fields, current, i = [], [], 0
    while i < len(line):
        ch = line[i]
        if ch == "\\" and i + 1 < len(line):
            nxt = line[i + 1]
            current.append({"n": "\n", "r": "\r"}.get(nxt, nxt))
            i += 2
            continue
        if ch == "|":
            fields.append("".join(current).strip())
            current = []
            i += 1
            continue
        current.append(ch)
        i += 1
    fields.append("".join(current).strip())
    return fields


def save_ruleset(ruleset: RuleSet, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"{_HEADER}\n")
        fh.write(f"#task: {ruleset.task}\n")
        for rule in ruleset.rules:
            fh.write(
                " | ".join(
                    (_escape(rule.id), rule.provenance, _escape(rule.dsl), _escape(rule.source_text))
                )
                + "\n"
            )


def load_ruleset(path) -> RuleSet:
    task = ""
    rules: list[Rule] = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n")
            if line.startswith("#task:"):
                task = line.split(":", 1)[1].strip()
                continue
            if not line.strip() or line.startswith("#"):
                continue
            fields = _split_record(line)
            if len(fields) != 4:
                raise RulesetFormatError(
                    f"{path}:{lineno}: expected 4 pipe-separated fields, got {len(fields)}"
                )
            rule_id, provenance, dsl, source_text = fields
            if provenance not in PROVENANCES:
                raise RulesetFormatError(f"{path}:{lineno}: unknown provenance {provenance!r}")
            try:
                rule = make_rule(rule_id, dsl, source_text=source_text, provenance=provenance)
            except RuleParseError as exc:
                raise RulesetFormatError(f"{path}:{lineno}: {exc}") from exc
            rules.append(rule)
    try:
        return RuleSet(task=task, rules=tuple(rules))
    except ValueError as exc:
        raise RulesetFormatError(f"{path}: {exc}") from exc


def ruleset_to_obj(ruleset: RuleSet) -> dict:
    return {
        "task": ruleset.task,
        "rules": [
            {
                "id": r.id,
                "provenance": r.provenance,
                "dsl": r.dsl,
                "source_text": r.source_text,
                "value_kind": r.value_kind,
            }
            for r in ruleset.rules
        ],
    }


def ruleset_to_json(ruleset: RuleSet) -> str:
    return json.dumps(ruleset_to_obj(ruleset), indent=2)


def ruleset_from_obj(obj: dict) -> RuleSet:
    try:
        rules = tuple(
            make_rule(
                r["id"],
                r["dsl"],
                source_text=r.get("source_text", ""),
                provenance=r.get("provenance", "manual"),
            )
            for r in obj["rules"]
        )
        return RuleSet(task=obj.get("task", ""), rules=rules)
    except (KeyError, TypeError, ValueError, RuleParseError) as exc:
        raise RulesetFormatError(f"bad ruleset document: {exc}") from exc


def ruleset_from_json(text: str) -> RuleSet:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RulesetFormatError(f"bad ruleset JSON: {exc}") from exc
    return ruleset_from_obj(obj)
