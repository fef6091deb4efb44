"""Run configuration: one document that pins a whole pipeline run."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field

from ..errors import ConfigError
from ..oracle.backend import LIVE, REPLAY, BackendConfig


@dataclass
class RunConfig:
    task: str = ""
    dataset_path: str = ""
    smiles_column: str = "smiles"
    label_column: str = ""

    split_method: str = "scaffold"  # "scaffold" | "random"
    split_fractions: tuple[float, float, float] = (0.8, 0.1, 0.1)
    split_seed: int = 0

    oracle_mode: str = REPLAY  # "live" | "replay"
    transcript_path: str = ""
    endpoint_url: str = ""
    model_name: str = ""
    temperature: float = 0.0
    max_tokens: int = 1024
    api_key_env: str = "MOLRULES_API_KEY"

    synthesis: bool = True
    inference: bool = True
    manual_rulesets: tuple[str, ...] = ()
    synthesis_rule_count: int = 30
    inference_batch_size: int = 25
    inference_batches: int = 10
    inference_seed: int = 0
    llm_transcribe: bool = False

    model_kind: str = "forest"  # "forest" | "logistic"
    n_trees: int = 500
    max_depth: int | None = None
    min_samples_leaf: int | None = None
    bootstrap: bool = True
    model_seed: int = 0
    l2: float = 1.0
    logistic_tolerance: float = 1e-8
    logistic_max_iter: int = 100

    annotations_path: str = ""
    output_dir: str = "runs"
    explain_top_k: int = 3

    def validate(self):
        if not self.task:
            raise ConfigError("config needs a task name")
        if not (self.synthesis or self.inference or self.manual_rulesets):
            raise ConfigError("at least one rule source must be enabled")
        if self.oracle_mode not in (LIVE, REPLAY):
            raise ConfigError(f"oracle_mode must be 'live' or 'replay', got {self.oracle_mode!r}")
        if self.oracle_mode == REPLAY and not self.transcript_path:
            raise ConfigError("replay mode requires transcript_path")
        if self.oracle_mode == LIVE and not self.endpoint_url:
            raise ConfigError("live mode requires endpoint_url")
        if self.split_method not in ("scaffold", "random"):
            raise ConfigError(f"split_method must be 'scaffold' or 'random', got {self.split_method!r}")
        if self.model_kind not in ("forest", "logistic"):
            raise ConfigError(f"model_kind must be 'forest' or 'logistic', got {self.model_kind!r}")
        return self

    def backend_config(self) -> BackendConfig:
        return BackendConfig(
            endpoint_url=self.endpoint_url,
            model=self.model_name,
            temperature=self.temperature,
            max_tokens=self.max_tokens,
            api_key_env=self.api_key_env,
        )

    def to_obj(self) -> dict:
        obj = asdict(self)
        obj["split_fractions"] = list(self.split_fractions)
        obj["manual_rulesets"] = list(self.manual_rulesets)
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), indent=2, sort_keys=True)

    def config_hash(self) -> str:
        return hashlib.sha256(
            json.dumps(self.to_obj(), sort_keys=True, separators=(",", ":")).encode()
        ).hexdigest()

    @staticmethod
    def from_obj(obj: dict) -> "RunConfig":
        known = {f for f in RunConfig.__dataclass_fields__}
        unknown = set(obj) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg = RunConfig(**obj)
        cfg.split_fractions = tuple(cfg.split_fractions)
        cfg.manual_rulesets = tuple(cfg.manual_rulesets)
        return cfg

    @staticmethod
    def from_file(path, overrides: dict | None = None) -> "RunConfig":
        try:
            with open(path) as fh:
                obj = json.load(fh)
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"bad config JSON in {path}: {exc}") from exc
        if overrides:
            obj.update({k: v for k, v in overrides.items() if v is not None})
        return RunConfig.from_obj(obj)
