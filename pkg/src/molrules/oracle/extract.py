"""Pull candidate rule strings out of free-text responses."""

from __future__ import annotations

import re

from ..errors import OracleError

_MARKER = re.compile(r"^\s*(?:\d+[.)]\s+|[-*•]\s+)")


def extract_rules(response: str) -> list[str]:
    """Split a response on numbered/bulleted list markers.

    Lines without a marker continue the current item. If the text has
    no markers at all, the whole (non-empty) text is one item.
    """
    if not response or not response.strip():
        return []
    items: list[str] = []
    saw_marker = False
    for line in response.splitlines():
        match = _MARKER.match(line)
        if match:
            saw_marker = True
            items.append(line[match.end() :].strip())
        elif saw_marker and items and line.strip():
            items[-1] = f"{items[-1]} {line.strip()}"
    if not saw_marker:
        return [response.strip()]
    return [item for item in items if item]


def summarize_rules(oracle, task, rule_texts) -> list[str]:
    """Condense rule texts through the oracle: prompt, complete, parse.

    The result carries no exact duplicates (an order-preserving guard on
    top of whatever the backend merged); an empty response is an error.
    """
    from .prompts import build_summarize_prompt

    response = oracle.complete(build_summarize_prompt(task, rule_texts))
    condensed = list(dict.fromkeys(extract_rules(response)))
    if not condensed:
        raise OracleError("no rules extracted from the summarization response")
    return condensed
