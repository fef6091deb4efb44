"""Turn prose rules into DSL expressions.

Stage 1 is a keyword registry covering the phrasings that recur in
generated rule lists; stage 2 (optional) asks the oracle to emit DSL
directly, validated by the DSL parser. Failure is a value, never an
exception: untranscribable rules keep their text and a reason.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import OracleError, RuleParseError
from ..rulekit import parse_rule
from .backend import Oracle
from .prompts import build_transcribe_prompt


@dataclass(frozen=True)
class Untranscribable:
    source_text: str
    reason: str


# checked in order: first hit wins, so specific phrasings precede generic
KEYWORD_RULES: tuple[tuple[str, str], ...] = (
    (r"molecular weight|molar mass", "desc(mw)"),
    (r"distribution coefficient|\blog\s?d\b", "desc(clogp)"),
    (r"lipophilic|\blog\s?p\b|octanol|partition coefficient", "desc(clogp)"),
    (r"polar surface area|\btpsa\b", "desc(tpsa)"),
    (r"hydrogen bond donor", "desc(hbd)"),
    (r"hydrogen bond acceptor", "desc(hba)"),
    (r"hydrogen bond", "1*desc(hbd) + 1*desc(hba)"),
    (r"rotatable bond|molecular flexibility", "desc(rotatable_bonds)"),
    (r"aromatic ring", "desc(aromatic_ring_count)"),
    (r"largest ring|max(imum)? ring size", "desc(max_ring_size)"),
    (r"fragment ring|\bring\b|\brings\b|\bcyclic\b", "desc(ring_count)"),
    (r"carbonyl", "count(C=O)"),
    (r"carboxyl", "count(C(=O)[OH])"),
    (r"hydroxyl", "count([OH])"),
    (r"\bamide\b", "count(C(=O)N)"),
    (r"\bester\b", "count(C(=O)OC)"),
    (r"nitrile|cyano group", "count(C#N)"),
    (r"\bnitro\b", "count([N+](=O)[O-])"),
    (r"amine|amino group", "count(N)"),
    (r"halogen", "desc(halogen_count)"),
    (r"formal charge|net charge|charged", "desc(formal_charge_total)"),
    (r"heavy atom|number of atoms|molecular size|size of the molecule", "desc(heavy_atom_count)"),
    (r"nitrogen atom", "count(N)"),
    (r"oxygen atom", "count(O)"),
    (r"sul[fp]hur atom|sulfur atom", "count(S)"),
    (r"double bond", "count(C=C)"),
    (r"triple bond|alkyne", "count(C#C)"),
    (r"phenyl|benzene ring", "has(c1ccccc1)"),
)

_COMPILED = tuple((re.compile(pattern, re.IGNORECASE), dsl) for pattern, dsl in KEYWORD_RULES)


def transcribe_by_keywords(rule_text: str) -> str | None:
    """Registry lookup; returns DSL text or None."""
    stripped = rule_text.strip()
    # a rule that already is DSL passes straight through
    if stripped.startswith(("desc(", "count(", "has(")) or "*desc(" in stripped:
        try:
            parse_rule(stripped)
            return stripped
        except RuleParseError:
            pass
    for regex, dsl in _COMPILED:
        if regex.search(rule_text):
            return dsl
    return None


def transcribe(
    rule_text: str,
    oracle: Oracle | None = None,
    descriptor_names=None,
) -> str | Untranscribable:
    """Map one prose rule to DSL text, or explain why it cannot be."""
    dsl = transcribe_by_keywords(rule_text)
    if dsl is not None:
        return dsl
    if oracle is None:
        return Untranscribable(rule_text, "no keyword mapping")
    if descriptor_names is None:
        from ..descriptors import list_descriptors

        descriptor_names = [d.name for d in list_descriptors()]
    prompt = build_transcribe_prompt(rule_text, descriptor_names)
    try:
        response = oracle.complete(prompt).strip()
    except OracleError as exc:
        return Untranscribable(rule_text, f"oracle transcription failed: {exc}")
    candidate = response.splitlines()[0].strip() if response else ""
    if not candidate or candidate.upper().startswith("UNTRANSCRIBABLE"):
        return Untranscribable(rule_text, "oracle declared the rule untranscribable")
    try:
        parse_rule(candidate)
    except RuleParseError as exc:
        return Untranscribable(rule_text, f"oracle output did not parse: {exc}")
    return candidate
