"""Chat-completion backend: live HTTP client and replay transcripts.

The transcript is an append-only JSON-lines file. ``exchange`` records
carry (prompt hash, prompt, response, backend id, timestamp); ``attempt``
records log every live HTTP attempt including retried failures. Replay
mode answers exclusively from the stored exchanges, keyed by a 256-bit
hash of the whitespace-canonicalized prompt text, so reruns are
bit-deterministic.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import time
from dataclasses import dataclass, field

import requests

from ..errors import ConfigError, OracleError, ReplayMissError
from .prompts import Prompt

LIVE = "live"
REPLAY = "replay"

_RETRYABLE_STATUS = {429, 500, 502, 503, 504}


def canonicalize_prompt(text: str) -> str:
    lines = text.replace("\r\n", "\n").split("\n")
    return "\n".join(line.rstrip() for line in lines).strip()


def prompt_hash(text: str) -> str:
    return hashlib.sha256(canonicalize_prompt(text).encode("utf-8")).hexdigest()


@dataclass
class BackendConfig:
    endpoint_url: str = ""
    model: str = ""
    temperature: float = 0.0
    max_tokens: int = 1024
    api_key_env: str = "MOLRULES_API_KEY"
    timeout: float = 60.0
    max_attempts: int = 3
    backoff_base: float = 1.0

    @property
    def backend_id(self) -> str:
        return f"{self.model}@{self.endpoint_url}"


class Transcript:
    """Append-only JSON-lines store of oracle interactions.

    Single-writer: appends are serialized by a lock. The replay index
    maps prompt hash to the first stored response for that hash.
    """

    def __init__(self, path):
        self.path = path
        self._lock = threading.Lock()
        self._index: dict[str, str] = {}
        if path is not None and os.path.exists(path):
            self._load()

    def _load(self):
        with open(self.path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    entry = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise OracleError(f"{self.path}:{lineno}: bad transcript line: {exc}") from exc
                if entry.get("kind", "exchange") == "exchange":
                    self._index.setdefault(entry["hash"], entry["response"])

    def lookup(self, phash: str) -> str | None:
        return self._index.get(phash)

    def _append(self, entry: dict):
        if self.path is None:
            return
        with self._lock:
            with open(self.path, "a") as fh:
                fh.write(json.dumps(entry, sort_keys=True) + "\n")

    def record_exchange(self, prompt_text: str, response: str, backend_id: str):
        phash = prompt_hash(prompt_text)
        self._append(
            {
                "kind": "exchange",
                "hash": phash,
                "prompt": prompt_text,
                "response": response,
                "backend": backend_id,
                "timestamp": time.time(),
            }
        )
        self._index.setdefault(phash, response)

    def record_attempt(self, prompt_text: str, status: str, backend_id: str):
        self._append(
            {
                "kind": "attempt",
                "hash": prompt_hash(prompt_text),
                "status": status,
                "backend": backend_id,
                "timestamp": time.time(),
            }
        )


class Oracle:
    """Front door for completions: live HTTP with retries, or replay."""

    def __init__(
        self,
        mode: str = REPLAY,
        config: BackendConfig | None = None,
        transcript: Transcript | str | None = None,
        sleep=time.sleep,
    ):
        if mode not in (LIVE, REPLAY):
            raise ConfigError(f"oracle mode must be 'live' or 'replay', got {mode!r}")
        if isinstance(transcript, (str, os.PathLike)):
            transcript = Transcript(transcript)
        if mode == REPLAY and transcript is None:
            raise ConfigError("replay mode requires a transcript")
        if mode == LIVE and (config is None or not config.endpoint_url):
            raise ConfigError("live mode requires a backend endpoint")
        self.mode = mode
        self.config = config or BackendConfig()
        self.transcript = transcript
        self._lock = threading.Lock()
        self._sleep = sleep

    def complete(self, prompt: Prompt | str) -> str:
        """Resolve a prompt to response text and record the exchange."""
        text = prompt.text if isinstance(prompt, Prompt) else prompt
        if self.mode == REPLAY:
            response = self.transcript.lookup(prompt_hash(text))
            if response is None:
                raise ReplayMissError(prompt_hash(text))
            return response
        with self._lock:  # serialize requests per backend
            response = self._complete_live(text)
        if self.transcript is not None:
            self.transcript.record_exchange(text, response, self.config.backend_id)
        return response

    def _complete_live(self, text: str) -> str:
        cfg = self.config
        headers = {"Content-Type": "application/json"}
        api_key = os.environ.get(cfg.api_key_env, "")
        if api_key:
            headers["Authorization"] = f"Bearer {api_key}"
        payload = {
            "model": cfg.model,
            "messages": [{"role": "user", "content": text}],
            "temperature": cfg.temperature,
            "max_tokens": cfg.max_tokens,
        }
        last_error = "unknown error"
        for attempt in range(cfg.max_attempts):
            try:
                response = requests.post(
                    cfg.endpoint_url, json=payload, headers=headers, timeout=cfg.timeout
                )
            except requests.RequestException as exc:
                last_error = f"connection error: {exc}"
                self._log_attempt(text, last_error)
            else:
                if response.status_code == 200:
                    self._log_attempt(text, "ok")
                    return self._parse_response(response)
                last_error = f"HTTP {response.status_code}"
                self._log_attempt(text, last_error)
                if response.status_code not in _RETRYABLE_STATUS:
                    raise OracleError(f"backend request failed: {last_error}")
            if attempt < cfg.max_attempts - 1:
                self._sleep(cfg.backoff_base * (2**attempt))
        raise OracleError(
            f"backend request failed after {cfg.max_attempts} attempts: {last_error}"
        )

    def _log_attempt(self, text: str, status: str):
        if self.transcript is not None:
            self.transcript.record_attempt(text, status, self.config.backend_id)

    @staticmethod
    def _parse_response(response) -> str:
        try:
            body = response.json()
            return body["choices"][0]["message"]["content"]
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise OracleError(f"malformed backend response: {exc}") from exc
