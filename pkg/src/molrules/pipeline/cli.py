"""Command-line interface.

Verbs: synth, infer, train, validate, explain, serve, ablate. Every
verb takes --config (JSON file of RunConfig keys); common flags
override config values. Exit codes: 0 success, 1 usage error, 2 data
error, 3 oracle error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from ..errors import ConfigError, DataError, MolrulesError, OracleError, RulesetFormatError, SmilesParseError
from ..rulekit import load_ruleset, merge_rulesets, save_ruleset
from .config import RunConfig
from .runner import (
    explain,
    load_dataset,
    load_trained,
    make_oracle,
    make_split,
    run_ablation,
    run_inference,
    run_synthesis,
    run_train,
    run_validate_rules,
    task_dir_for,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_ORACLE = 3

SYNTHESIS_RULES = "synthesis.rules"
INFERENCE_RULES = "inference.rules"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit2(message)


class SystemExit2(Exception):
    pass


def _build_parser() -> _Parser:
    parser = _Parser(prog="molrules", description="rule-based molecular modeling pipeline")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="path to a RunConfig JSON file")
        p.add_argument("--task", help="override the task name")
        p.add_argument("--dataset", dest="dataset_path", help="override the dataset path")
        p.add_argument("--out", dest="output_dir", help="override the output directory")
        p.add_argument("--seed", dest="model_seed", type=int, help="override the model seed")
        p.add_argument("--transcript", dest="transcript_path", help="override the transcript path")

    for verb in ("synth", "infer", "train", "validate", "ablate"):
        p = sub.add_parser(verb)
        common(p)
        if verb == "train":
            p.add_argument(
                "--ruleset",
                action="append",
                default=None,
                help="explicit ruleset file(s); default: the enabled sources in the output dir",
            )
        if verb == "validate":
            p.add_argument("--annotations", help="rule_id,supported,citation_note CSV")

    p = sub.add_parser("explain")
    common(p)
    p.add_argument("--smiles", required=True)
    p.add_argument("-k", type=int, default=None, help="number of top contributions")
    p.add_argument("--mode", choices=("template", "llm"), default="template")

    p = sub.add_parser("serve")
    p.add_argument("--store", required=True, help="directory of trained task directories")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8765)
    return parser


def _config_from_args(args) -> RunConfig:
    overrides = {
        key: getattr(args, key, None)
        for key in ("task", "dataset_path", "output_dir", "model_seed", "transcript_path")
    }
    return RunConfig.from_file(args.config, overrides).validate()


def _cmd_synth(args) -> int:
    config = _config_from_args(args)
    ruleset, skipped = run_synthesis(config)
    os.makedirs(config.output_dir, exist_ok=True)
    path = os.path.join(config.output_dir, SYNTHESIS_RULES)
    save_ruleset(ruleset, path)
    _write_skipped(config, "synthesis", skipped)
    print(f"synthesized {len(ruleset)} rules -> {path}")
    for item in skipped:
        print(f"  untranscribable: {item.source_text!r} ({item.reason})")
    return EXIT_OK


def _cmd_infer(args) -> int:
    config = _config_from_args(args)
    ruleset, skipped = run_inference(config)
    os.makedirs(config.output_dir, exist_ok=True)
    path = os.path.join(config.output_dir, INFERENCE_RULES)
    save_ruleset(ruleset, path)
    _write_skipped(config, "inference", skipped)
    print(f"inferred {len(ruleset)} rules -> {path}")
    for item in skipped:
        print(f"  untranscribable: {item.source_text!r} ({item.reason})")
    return EXIT_OK


def _write_skipped(config, phase, skipped):
    if not skipped:
        return
    path = os.path.join(config.output_dir, f"{phase}-untranscribable.json")
    with open(path, "w") as fh:
        json.dump(
            [{"source_text": u.source_text, "reason": u.reason} for u in skipped],
            fh,
            indent=2,
        )


def _gather_rulesets(config: RunConfig, explicit) -> list:
    if explicit:
        return [load_ruleset(p) for p in explicit]
    rulesets = []
    if config.synthesis:
        path = os.path.join(config.output_dir, SYNTHESIS_RULES)
        if not os.path.exists(path):
            raise ConfigError(f"synthesis enabled but {path} not found; run 'molrules synth' first")
        rulesets.append(load_ruleset(path))
    if config.inference:
        path = os.path.join(config.output_dir, INFERENCE_RULES)
        if not os.path.exists(path):
            raise ConfigError(f"inference enabled but {path} not found; run 'molrules infer' first")
        rulesets.append(load_ruleset(path))
    for path in config.manual_rulesets:
        rulesets.append(load_ruleset(path))
    if not rulesets:
        raise ConfigError("no rulesets to train on")
    return rulesets


def _cmd_train(args) -> int:
    config = _config_from_args(args)
    rulesets = _gather_rulesets(config, args.ruleset)
    combined = merge_rulesets(config.task, *rulesets)
    trained = run_train(config, combined)
    print(f"trained {config.model_kind} on {len(combined)} rules -> {trained.task_dir}")
    print(json.dumps(trained.metrics, indent=2, sort_keys=True))
    return EXIT_OK


def _cmd_validate(args) -> int:
    config = _config_from_args(args)
    trained = load_trained(task_dir_for(config))
    verdicts = run_validate_rules(config, trained, annotations_path=getattr(args, "annotations", None))
    counts: dict[str, int] = {}
    for v in verdicts:
        counts[v.category] = counts.get(v.category, 0) + 1
    print(f"validated {len(verdicts)} rules -> {trained.task_dir}")
    for category, count in sorted(counts.items()):
        print(f"  {category}: {count}")
    return EXIT_OK


def _cmd_explain(args) -> int:
    config = _config_from_args(args)
    trained = load_trained(task_dir_for(config))
    k = args.k if args.k is not None else config.explain_top_k
    oracle = make_oracle(config) if args.mode == "llm" else None
    result = explain(trained, args.smiles, k=k, mode=args.mode, oracle=oracle)
    if result.notice:
        print(f"[notice] {result.notice}", file=sys.stderr)
    print(result.narrative)
    return EXIT_OK


def _cmd_ablate(args) -> int:
    config = _config_from_args(args)
    results = run_ablation(config)
    for name, trained in results.items():
        print(f"{name}: {json.dumps(trained.metrics.get('test', {}), sort_keys=True)}")
    return EXIT_OK


def _cmd_serve(args) -> int:
    from .service import serve

    serve(args.store, host=args.host, port=args.port)
    return EXIT_OK


_COMMANDS = {
    "synth": _cmd_synth,
    "infer": _cmd_infer,
    "train": _cmd_train,
    "validate": _cmd_validate,
    "explain": _cmd_explain,
    "ablate": _cmd_ablate,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, SmilesParseError, RulesetFormatError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OracleError as exc:
        print(f"oracle error: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except MolrulesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
