"""Pipeline phases: synthesize rules, infer rules, train, validate,
explain. Each phase persists everything needed to audit a prediction."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

import numpy as np

from ..datasets import (
    CLASSIFICATION,
    Dataset,
    Split,
    load_csv,
    random_split,
    sample_batches,
    scaffold_split,
)
from ..errors import ConfigError, DataError, OracleError
from ..learners import RandomForest, dumps_model, fit_logistic, load_model, save_model
from ..learners.linear import LogisticFit
from ..molgraph import Molecule, parse_smiles
from ..oracle import (
    Oracle,
    TaskSpec,
    Transcript,
    Untranscribable,
    build_explain_prompt,
    build_inference_prompt,
    build_synthesis_prompt,
    extract_rules,
    get_task,
    summarize_rules,
    transcribe,
)
from ..rulekit import (
    INFERRED,
    RuleSet,
    SYNTHESIZED,
    featurize,
    load_ruleset,
    make_rule,
    merge_rulesets,
    ruleset_to_json,
    save_ruleset,
)
from ..stats import auc_roc, classify_rule, load_annotations, mae, mann_whitney_u, rmse, slope_t_test, write_verdicts_csv
from ..stats.verdicts import RuleVerdict, verdict_to_obj
from .config import RunConfig


def make_oracle(config: RunConfig) -> Oracle:
    transcript = Transcript(config.transcript_path) if config.transcript_path else None
    return Oracle(mode=config.oracle_mode, config=config.backend_config(), transcript=transcript)


def load_dataset(config: RunConfig) -> Dataset:
    task = get_task(config.task)
    if not config.dataset_path:
        raise ConfigError("config needs dataset_path")
    if not config.label_column:
        raise ConfigError("config needs label_column")
    return load_csv(
        config.dataset_path,
        smiles_column=config.smiles_column,
        label_column=config.label_column,
        task=config.task,
        kind=task.kind,
    )


def make_split(config: RunConfig, dataset: Dataset) -> Split:
    if config.split_method == "scaffold":
        return scaffold_split(dataset, config.split_fractions)
    return random_split(dataset, config.split_fractions, seed=config.split_seed)


def _transcribe_all(texts, prefix, provenance, oracle, use_llm):
    rules = []
    skipped: list[Untranscribable] = []
    seen_dsl: set[str] = set()
    counter = 0
    for text in texts:
        outcome = transcribe(text, oracle=oracle if use_llm else None)
        if isinstance(outcome, Untranscribable):
            skipped.append(outcome)
            continue
        counter += 1
        rule = make_rule(f"{prefix}-{counter:03d}", outcome, source_text=text, provenance=provenance)
        if rule.dsl in seen_dsl:
            counter -= 1
            continue
        seen_dsl.add(rule.dsl)
        rules.append(rule)
    return rules, skipped


def run_synthesis(config: RunConfig, oracle: Oracle | None = None):
    """Phase one: persona prompt -> rule texts -> DSL ruleset."""
    task = get_task(config.task)
    oracle = oracle or make_oracle(config)
    prompt = build_synthesis_prompt(task, config.synthesis_rule_count)
    response = oracle.complete(prompt)
    texts = extract_rules(response)
    rules, skipped = _transcribe_all(texts, "syn", SYNTHESIZED, oracle, config.llm_transcribe)
    if not rules:
        reasons = "; ".join(f"{u.source_text!r}: {u.reason}" for u in skipped) or "no rules extracted"
        raise OracleError(f"synthesis produced zero transcribable rules ({reasons})")
    return RuleSet(task=config.task, rules=tuple(rules)), skipped


def run_inference(config: RunConfig, oracle: Oracle | None = None, dataset: Dataset | None = None, split: Split | None = None):
    """Phase two: labeled batches -> per-batch rules -> condensed ruleset."""
    task = get_task(config.task)
    oracle = oracle or make_oracle(config)
    dataset = dataset or load_dataset(config)
    split = split or make_split(config, dataset)
    if not split.train:
        raise DataError("train partition is empty")
    batches = sample_batches(
        dataset,
        split.train,
        batch_size=config.inference_batch_size,
        n_batches=config.inference_batches,
        seed=config.inference_seed,
    )
    collected: list[str] = []
    for batch in batches:
        pairs = [
            (r.smiles, int(r.label) if task.kind == CLASSIFICATION else float(r.label))
            for r in batch
        ]
        response = oracle.complete(build_inference_prompt(task, pairs))
        collected.extend(extract_rules(response))
    if not collected:
        raise OracleError("inference produced no rule texts")
    condensed = summarize_rules(oracle, task, collected)
    rules, skipped = _transcribe_all(condensed, "inf", INFERRED, oracle, config.llm_transcribe)
    if not rules:
        raise OracleError("inference produced zero transcribable rules")
    return RuleSet(task=config.task, rules=tuple(rules)), skipped


@dataclass
class TrainedTask:
    task: str
    kind: str
    ruleset: RuleSet
    split: Split
    model: object
    importances: np.ndarray
    metrics: dict
    config: RunConfig
    verdicts: list[RuleVerdict] = field(default_factory=list)
    task_dir: str = ""

    @property
    def task_id(self) -> str:
        return self.task


def _labels(dataset: Dataset, ids) -> np.ndarray:
    return np.array([dataset.records[i].label for i in ids], dtype=float)


def _molecules(dataset: Dataset, ids) -> list[Molecule]:
    return [dataset.records[i].molecule for i in ids]


def _model_importances(model, n_features) -> np.ndarray:
    if isinstance(model, RandomForest):
        return np.asarray(model.feature_importances_, dtype=float)
    if isinstance(model, LogisticFit):
        weights = np.abs(model.coefficients)
        total = weights.sum()
        return weights / total if total > 0 else weights
    raise ConfigError(f"no importances for model type {type(model).__name__}")


def _score(model, X) -> np.ndarray:
    if isinstance(model, RandomForest) and model.task == CLASSIFICATION:
        return model.predict_proba(X)[:, 1]
    if isinstance(model, LogisticFit):
        return model.predict_proba(X)
    return model.predict(X)


def run_train(config: RunConfig, ruleset: RuleSet, dataset: Dataset | None = None, split: Split | None = None) -> TrainedTask:
    """Phase three: featurize, fit, score each partition, persist."""
    if len(ruleset) == 0:
        raise ConfigError("cannot train on an empty ruleset")
    task = get_task(config.task)
    dataset = dataset or load_dataset(config)
    split = split or make_split(config, dataset)

    matrices = {}
    labels = {}
    for name in ("train", "valid", "test"):
        ids = split.partition(name)
        matrices[name] = featurize(ruleset, _molecules(dataset, ids), row_ids=ids)
        labels[name] = _labels(dataset, ids)

    y_train = labels["train"]
    if task.kind == CLASSIFICATION and len(np.unique(y_train)) < 2:
        raise DataError("degenerate training labels: a single class")

    if config.model_kind == "forest":
        model = RandomForest(
            task=task.kind,
            n_trees=config.n_trees,
            max_depth=config.max_depth,
            min_samples_leaf=config.min_samples_leaf,
            bootstrap=config.bootstrap,
            seed=config.model_seed,
        ).fit(matrices["train"].values, y_train)
    else:
        if task.kind != CLASSIFICATION:
            raise ConfigError("logistic model requires a classification task")
        model = fit_logistic(
            matrices["train"].values,
            y_train,
            l2=config.l2,
            tolerance=config.logistic_tolerance,
            max_iter=config.logistic_max_iter,
        )

    metrics: dict = {"task": config.task, "kind": task.kind, "n_rules": len(ruleset)}
    for name in ("train", "valid", "test"):
        X = matrices[name].values
        y = labels[name]
        if len(y) == 0:
            continue
        if task.kind == CLASSIFICATION:
            scores = _score(model, X)
            entry = {"auc_roc": auc_roc(scores, y) if len(np.unique(y)) == 2 else None}
        else:
            pred = model.predict(X)
            entry = {"rmse": rmse(pred, y), "mae": mae(pred, y)}
        metrics[name] = entry

    trained = TrainedTask(
        task=config.task,
        kind=task.kind,
        ruleset=ruleset,
        split=split,
        model=model,
        importances=_model_importances(model, len(ruleset)),
        metrics=metrics,
        config=config,
    )
    persist_trained(trained)
    return trained


def run_validate_rules(config: RunConfig, trained: TrainedTask, dataset: Dataset | None = None, annotations_path: str | None = None) -> list[RuleVerdict]:
    """Phase four: per-rule statistics on the training rows plus the
    three-way categorization against literature annotations."""
    dataset = dataset or load_dataset(config)
    ids = trained.split.train
    matrix = featurize(trained.ruleset, _molecules(dataset, ids), row_ids=ids)
    y = _labels(dataset, ids)

    annotations = {}
    path = annotations_path or config.annotations_path
    if path and os.path.exists(path):
        annotations = load_annotations(path)

    verdicts = []
    for j, rule in enumerate(trained.ruleset.rules):
        column = matrix.values[:, j]
        if trained.kind == CLASSIFICATION:
            a = column[y == 1]
            b = column[y == 0]
            test = mann_whitney_u(a, b)
        else:
            if float(np.var(column)) == 0.0:
                from ..stats.ranktests import TestResult

                test = TestResult(
                    statistic=0.0,
                    p_value=1.0,
                    method="slope_t",
                    n=(len(column),),
                    degenerate=True,
                )
            else:
                test = slope_t_test(column, y)
        supported = annotations.get(rule.id, (None, ""))[0] if annotations else None
        verdicts.append(classify_rule(test, supported, rule_id=rule.id))

    trained.verdicts = verdicts
    if trained.task_dir:
        _write_verdicts(trained)
    return verdicts


# --- persistence -----------------------------------------------------------

RULESET_FILE = "ruleset.rules"
RULESET_JSON = "ruleset.json"
SPLIT_FILE = "split.json"
MODEL_FILE = "model.json"
METRICS_FILE = "metrics.json"
CONFIG_FILE = "config.json"
VERDICTS_JSON = "verdicts.json"
VERDICTS_CSV = "verdicts.csv"
PROVENANCE_FILE = "provenance.json"


def task_dir_for(config: RunConfig) -> str:
    return os.path.join(config.output_dir, config.task)


def persist_trained(trained: TrainedTask) -> str:
    directory = task_dir_for(trained.config)
    os.makedirs(directory, exist_ok=True)
    save_ruleset(trained.ruleset, os.path.join(directory, RULESET_FILE))
    with open(os.path.join(directory, RULESET_JSON), "w") as fh:
        fh.write(ruleset_to_json(trained.ruleset))
    with open(os.path.join(directory, SPLIT_FILE), "w") as fh:
        fh.write(trained.split.to_json())
    save_model(trained.model, os.path.join(directory, MODEL_FILE))
    with open(os.path.join(directory, METRICS_FILE), "w") as fh:
        json.dump(trained.metrics, fh, indent=2, sort_keys=True)
    with open(os.path.join(directory, CONFIG_FILE), "w") as fh:
        fh.write(trained.config.to_json())
    provenance = {
        "config_hash": trained.config.config_hash(),
        "model_hash": _sha256_text(dumps_model(trained.model)),
        "transcript_path": trained.config.transcript_path,
        "importances": trained.importances.tolist(),
    }
    with open(os.path.join(directory, PROVENANCE_FILE), "w") as fh:
        json.dump(provenance, fh, indent=2, sort_keys=True)
    trained.task_dir = directory
    if trained.verdicts:
        _write_verdicts(trained)
    return directory


def _sha256_text(text: str) -> str:
    import hashlib

    return hashlib.sha256(text.encode()).hexdigest()


def _write_verdicts(trained: TrainedTask):
    with open(os.path.join(trained.task_dir, VERDICTS_JSON), "w") as fh:
        json.dump([verdict_to_obj(v) for v in trained.verdicts], fh, indent=2, sort_keys=True)
    write_verdicts_csv(trained.verdicts, os.path.join(trained.task_dir, VERDICTS_CSV))


def load_trained(task_dir: str) -> TrainedTask:
    config = RunConfig.from_file(os.path.join(task_dir, CONFIG_FILE))
    ruleset = load_ruleset(os.path.join(task_dir, RULESET_FILE))
    with open(os.path.join(task_dir, SPLIT_FILE)) as fh:
        split = Split.from_json(fh.read())
    model = load_model(os.path.join(task_dir, MODEL_FILE))
    if getattr(model, "n_features_", len(ruleset)) != len(ruleset):
        raise ConfigError(
            f"{task_dir}: model expects {model.n_features_} features, ruleset has {len(ruleset)}"
        )
    with open(os.path.join(task_dir, METRICS_FILE)) as fh:
        metrics = json.load(fh)
    with open(os.path.join(task_dir, PROVENANCE_FILE)) as fh:
        provenance = json.load(fh)
    trained = TrainedTask(
        task=config.task,
        kind=get_task(config.task).kind,
        ruleset=ruleset,
        split=split,
        model=model,
        importances=np.asarray(provenance["importances"], dtype=float),
        metrics=metrics,
        config=config,
        task_dir=task_dir,
    )
    verdicts_path = os.path.join(task_dir, VERDICTS_JSON)
    if os.path.exists(verdicts_path):
        from ..stats.ranktests import TestResult

        with open(verdicts_path) as fh:
            for obj in json.load(fh):
                test = TestResult(**{**obj["test"], "n": tuple(obj["test"]["n"])})
                trained.verdicts.append(
                    RuleVerdict(
                        rule_id=obj["rule_id"],
                        test=test,
                        significant=obj["significant"],
                        literature_supported=obj["literature_supported"],
                        category=obj["category"],
                    )
                )
    return trained


# --- explanation -----------------------------------------------------------


@dataclass(frozen=True)
class Explanation:
    smiles: str
    prediction: float
    probability: float | None
    contributions: tuple[tuple[str, str, float, float], ...]  # (rule id, dsl, value, importance)
    narrative: str
    generator: str  # "llm" | "template"
    notice: str = ""


def _prediction_text(kind: str, prediction: float, probability: float | None) -> str:
    if kind == CLASSIFICATION:
        return f"label {int(prediction)} with probability {probability:.4f}"
    return f"value {prediction:.4f}"


def _template_narrative(task: TaskSpec, smiles: str, kind: str, prediction, probability, contributions) -> str:
    lines = [
        f"Prediction for {smiles}: {_prediction_text(kind, prediction, probability)} "
        f"({task.description})."
    ]
    lines.append("Top factors by model importance:")
    for rule_id, dsl, value, importance in contributions:
        lines.append(f"  - {rule_id} ({dsl}) = {value:g}, importance {importance * 100:.1f}%")
    return "\n".join(lines)


def explain(trained: TrainedTask, molecule: Molecule | str, k: int = 3, mode: str = "template", oracle: Oracle | None = None) -> Explanation:
    """Assemble the per-prediction explanation from the model output,
    the molecule's rule-feature values, and the rule importances."""
    if isinstance(molecule, str):
        molecule = parse_smiles(molecule)
    smiles = molecule.source
    matrix = featurize(trained.ruleset, [molecule])
    x = matrix.values

    if trained.kind == CLASSIFICATION:
        probability = float(_score(trained.model, x)[0])
        prediction = float(probability >= 0.5)
    else:
        probability = None
        prediction = float(trained.model.predict(x)[0])

    k = max(1, min(k, len(trained.ruleset)))
    order = np.argsort(-trained.importances, kind="mergesort")[:k]
    contributions = tuple(
        (
            trained.ruleset.rules[j].id,
            trained.ruleset.rules[j].dsl,
            float(x[0, j]),
            float(trained.importances[j]),
        )
        for j in order
    )

    task = get_task(trained.task)
    template_text = _template_narrative(task, smiles, trained.kind, prediction, probability, contributions)
    if mode == "template":
        return Explanation(smiles, prediction, probability, contributions, template_text, "template")
    if mode != "llm":
        raise ConfigError(f"unknown explanation mode {mode!r}")
    oracle = oracle or make_oracle(trained.config)
    prompt = build_explain_prompt(
        task, smiles, _prediction_text(trained.kind, prediction, probability), contributions
    )
    try:
        narrative = oracle.complete(prompt)
    except OracleError as exc:
        return Explanation(
            smiles,
            prediction,
            probability,
            contributions,
            template_text,
            "template",
            notice=f"llm explanation unavailable ({exc}); template fallback",
        )
    return Explanation(smiles, prediction, probability, contributions, narrative, "llm")


# --- ablation --------------------------------------------------------------


def run_ablation(config: RunConfig, oracle: Oracle | None = None) -> dict:
    """Train the synthesis-only, inference-only, and combined variants."""
    import copy

    oracle = oracle or make_oracle(config)
    dataset = load_dataset(config)
    split = make_split(config, dataset)
    syn_rules, _ = run_synthesis(config, oracle)
    inf_rules, _ = run_inference(config, oracle, dataset, split)

    variants = {
        "synthesis": syn_rules,
        "inference": inf_rules,
        "combined": merge_rulesets(config.task, syn_rules, inf_rules),
    }
    results = {}
    for name, ruleset in variants.items():
        variant_config = copy.deepcopy(config)
        variant_config.output_dir = os.path.join(config.output_dir, f"ablation-{name}")
        results[name] = run_train(variant_config, ruleset, dataset, split)
    comparison = {name: t.metrics for name, t in results.items()}
    os.makedirs(config.output_dir, exist_ok=True)
    with open(os.path.join(config.output_dir, "ablation.json"), "w") as fh:
        json.dump(comparison, fh, indent=2, sort_keys=True)
    return results
