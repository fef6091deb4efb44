"""Prompt building, chat-completion backends, and rule transcription."""

from .backend import (
    LIVE,
    REPLAY,
    BackendConfig,
    Oracle,
    Transcript,
    canonicalize_prompt,
    prompt_hash,
)
from .extract import extract_rules, summarize_rules
from .prompts import (
    EXPLAIN,
    INFERENCE,
    SUMMARIZE,
    SYNTHESIS,
    TRANSCRIBE,
    Prompt,
    build_explain_prompt,
    build_inference_prompt,
    build_summarize_prompt,
    build_synthesis_prompt,
    build_transcribe_prompt,
)
from .tasks import TASKS, TaskSpec, get_task, list_tasks
from .transcribe import KEYWORD_RULES, Untranscribable, transcribe, transcribe_by_keywords

__all__ = [
    "BackendConfig",
    "EXPLAIN",
    "INFERENCE",
    "KEYWORD_RULES",
    "LIVE",
    "Oracle",
    "Prompt",
    "REPLAY",
    "SUMMARIZE",
    "SYNTHESIS",
    "TASKS",
    "TRANSCRIBE",
    "TaskSpec",
    "Transcript",
    "Untranscribable",
    "build_explain_prompt",
    "build_inference_prompt",
    "build_summarize_prompt",
    "build_synthesis_prompt",
    "build_transcribe_prompt",
    "canonicalize_prompt",
    "extract_rules",
    "get_task",
    "list_tasks",
    "prompt_hash",
    "summarize_rules",
    "transcribe",
    "transcribe_by_keywords",
]
