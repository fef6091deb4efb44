"""End-to-end orchestration: config, phases, service, CLI."""

from .config import RunConfig
from .runner import (
    Explanation,
    TrainedTask,
    explain,
    load_dataset,
    load_trained,
    make_oracle,
    make_split,
    persist_trained,
    run_ablation,
    run_inference,
    run_synthesis,
    run_train,
    run_validate_rules,
    task_dir_for,
)

__all__ = [
    "Explanation",
    "RunConfig",
    "TrainedTask",
    "explain",
    "load_dataset",
    "load_trained",
    "make_oracle",
    "make_split",
    "persist_trained",
    "run_ablation",
    "run_inference",
    "run_synthesis",
    "run_train",
    "run_validate_rules",
    "task_dir_for",
]
