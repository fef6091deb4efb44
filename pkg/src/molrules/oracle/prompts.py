"""Prompt construction.

The synthesis and inference templates are shipped verbatim (including
the inference template's capitalized "Chemist" and the regression-only
"(without access to 3D information)" clause, which is appended for
tasks flagged ``no_3d``). Rendering is a pure function of the task,
purpose, and params; the golden tests pin every template.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .tasks import CLASSIFICATION, REGRESSION, TaskSpec

SYNTHESIS = "synthesis"
INFERENCE = "inference"
SUMMARIZE = "summarize"
EXPLAIN = "explain"
TRANSCRIBE = "transcribe"

_NO3D = " (without access to 3D information)"


@dataclass(frozen=True)
class Prompt:
    text: str
    purpose: str
    params: tuple[tuple[str, object], ...] = ()


def _synthesis_persona(task: TaskSpec) -> str:
    return task.persona  # lowercase in the synthesis template


def _inference_persona(task: TaskSpec) -> str:
    # the shipped inference template capitalizes the chemist branch
    return "Chemist" if task.persona == "chemist" else "biologist"


def build_synthesis_prompt(task: TaskSpec, rule_count: int = 30) -> Prompt:
    if rule_count not in (20, 30):
        raise ValueError(f"rule_count must be 20 or 30, got {rule_count}")
    text = (
        f"Assumed you are an experienced {_synthesis_persona(task)}. "
        f"Please come up with {rule_count} rules that you think are very important "
        f"to predict {task.synthesis_description()}. "
        f"Each rule is either about the structure or property of a molecule"
        f"{_NO3D if task.no_3d else ''}."
    )
    return Prompt(text=text, purpose=SYNTHESIS, params=(("rule_count", rule_count),))


def _format_value(value) -> str:
    if isinstance(value, float):
        return f"{value:g}"
    return str(value)


def build_inference_prompt(task: TaskSpec, batch) -> Prompt:
    """``batch`` is a sequence of (smiles, label) pairs; labels must be
    0/1 for classification tasks."""
    batch = list(batch)
    if not batch:
        raise ValueError("inference batch must be non-empty")
    if task.kind == CLASSIFICATION:
        for _, label in batch:
            if label not in (0, 1):
                raise ValueError(f"classification labels must be 0/1, got {label!r}")
        head = (
            f"Assume you are a very experienced {_inference_persona(task)}. "
            f"In the following data, with label 1, it means {task.inference_description()}. "
            f"With label 0, it means it is not. "
            f"Please infer step-by-step to come up with 3 rules that directly relate "
            f"the properties/structures of a molecule."
        )
    else:
        head = (
            f"Assume you are a very experienced {task.persona}. "
            f"The following data includes molecules and their corresponding value "
            f"{task.inference_description()}. "
            f"Please infer step-by-step to come up with 3 rules that directly relate "
            f"the properties/structures of a molecule{_NO3D if task.no_3d else ''}."
        )
    lines = [f"{smiles} {_format_value(label)}" for smiles, label in batch]
    return Prompt(
        text=head + "\n" + "\n".join(lines),
        purpose=INFERENCE,
        params=(("batch_size", len(batch)),),
    )


def build_summarize_prompt(task: TaskSpec, rule_texts) -> Prompt:
    rule_texts = list(rule_texts)
    if not rule_texts:
        raise ValueError("no rules to summarize")
    head = (
        f"You are given candidate rules for predicting {task.description}. "
        f"Condense the list: eliminate duplicates and merge rules that state the same thing, "
        f"keeping the original wording where possible. "
        f"Respond with a numbered list of the distinct rules and nothing else."
    )
    body = "\n".join(f"{i}. {text}" for i, text in enumerate(rule_texts, 1))
    return Prompt(
        text=head + "\n\nRules:\n" + body,
        purpose=SUMMARIZE,
        params=(("n_rules", len(rule_texts)),),
    )


def build_transcribe_prompt(rule_text: str, descriptor_names) -> Prompt:
    names = ", ".join(descriptor_names)
    text = (
        "Transcribe the following molecular rule into exactly one expression in this grammar:\n"
        "  desc(<name>) | count(<pattern>) | has(<pattern>) | a*E1 + b*E2 | E1 / E2\n"
        f"where <name> is one of: {names}; <pattern> is a substructure pattern "
        "(element symbols, aromatic lowercase, brackets with H-count/charge, bonds - = # : ~, "
        "branches, ring closures).\n"
        "Respond with the expression only, no explanation. If the rule cannot be expressed, "
        "respond with the single word UNTRANSCRIBABLE.\n\n"
        f"Rule: {rule_text}"
    )
    return Prompt(text=text, purpose=TRANSCRIBE)


def build_explain_prompt(task: TaskSpec, smiles: str, prediction_text: str, contributions) -> Prompt:
    """``contributions`` is a sequence of (rule id, dsl, value, importance)."""
    lines = [
        f"- {rule_id} ({dsl}): value {_format_value(value)}, importance {importance * 100:.1f}%"
        for rule_id, dsl, value, importance in contributions
    ]
    text = (
        f"A trained interpretable model was asked to predict {task.description} "
        f"for the molecule {smiles}. "
        f"The model output is: {prediction_text}. "
        f"The most important rules, the molecule's value for each, and each rule's "
        f"importance in the model are:\n" + "\n".join(lines) + "\n"
        "Using only this information, explain in plain language how these factors "
        "support the prediction."
    )
    return Prompt(text=text, purpose=EXPLAIN, params=(("k", len(lines)),))
