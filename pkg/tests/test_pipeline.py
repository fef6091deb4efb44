import hashlib
import json
import os

import numpy as np
import pytest

from molrules.errors import ConfigError, OracleError
from molrules.molgraph import parse_smiles
from molrules.pipeline import (
    RunConfig,
    explain,
    load_dataset,
    load_trained,
    make_oracle,
    make_split,
    run_inference,
    run_synthesis,
    run_train,
    run_validate_rules,
)
from molrules.pipeline.runner import task_dir_for
from molrules.rulekit import Rule, RuleSet, featurize, make_rule, merge_rulesets
from molrules.stats import SIGNIFICANT_NOT_FOUND, SIGNIFICANT_SUPPORTED


@pytest.fixture(scope="module")
def pipeline_run(tmp_path_factory):
    """One full replay run shared by the module's tests."""
    from conftest import fixture_config

    config = fixture_config(str(tmp_path_factory.mktemp("runs")))
    dataset = load_dataset(config)
    split = make_split(config, dataset)
    oracle = make_oracle(config)
    syn, syn_skipped = run_synthesis(config, oracle)
    inf, inf_skipped = run_inference(config, oracle, dataset, split)
    combined = merge_rulesets(config.task, syn, inf)
    trained = run_train(config, combined, dataset, split)
    verdicts = run_validate_rules(config, trained, dataset)
    return {
        "config": config,
        "dataset": dataset,
        "split": split,
        "oracle": oracle,
        "synthesis": syn,
        "synthesis_skipped": syn_skipped,
        "inference": inf,
        "inference_skipped": inf_skipped,
        "combined": combined,
        "trained": trained,
        "verdicts": verdicts,
    }


class TestConfig:
    def test_requires_rule_source(self):
        config = RunConfig(task="bbbp", synthesis=False, inference=False, transcript_path="x")
        with pytest.raises(ConfigError, match="rule source"):
            config.validate()

    def test_replay_requires_transcript(self):
        config = RunConfig(task="bbbp", oracle_mode="replay", transcript_path="")
        with pytest.raises(ConfigError, match="transcript"):
            config.validate()

    def test_unknown_keys_rejected(self):
        with pytest.raises(ConfigError, match="unknown config keys"):
            RunConfig.from_obj({"task": "bbbp", "bogus": 1})

    def test_hash_stable(self, bbbp_config):
        assert bbbp_config.config_hash() == bbbp_config.config_hash()


class TestSynthesis:
    def test_contains_permeability_determinants(self, pipeline_run):
        dsls = {r.dsl for r in pipeline_run["synthesis"].rules}
        assert {"desc(mw)", "desc(clogp)", "desc(tpsa)", "desc(hbd)", "desc(hba)"} <= dsls

    def test_provenance(self, pipeline_run):
        assert all(r.provenance == "synthesized" for r in pipeline_run["synthesis"].rules)

    def test_untranscribable_reported(self, pipeline_run):
        assert len(pipeline_run["synthesis_skipped"]) == 2

    def test_replay_rerun_identical(self, pipeline_run, tmp_path):
        from molrules.rulekit import save_ruleset

        again, _ = run_synthesis(pipeline_run["config"], pipeline_run["oracle"])
        a, b = tmp_path / "a.rules", tmp_path / "b.rules"
        save_ruleset(pipeline_run["synthesis"], a)
        save_ruleset(again, b)
        assert a.read_bytes() == b.read_bytes()

    def test_zero_transcribable_is_oracle_error(self, tmp_path):
        from molrules.oracle import Transcript, build_synthesis_prompt, get_task

        transcript = Transcript(str(tmp_path / "t.jsonl"))
        prompt = build_synthesis_prompt(get_task("bbbp"), 30)
        transcript.record_exchange(prompt.text, "1. gibberish\n2. more gibberish", "test")
        config = RunConfig(
            task="bbbp",
            oracle_mode="replay",
            transcript_path=str(tmp_path / "t.jsonl"),
            synthesis_rule_count=30,
        )
        with pytest.raises(OracleError, match="zero transcribable"):
            run_synthesis(config)


class TestInference:
    def test_contains_data_rules(self, pipeline_run):
        dsls = {r.dsl for r in pipeline_run["inference"].rules}
        assert "count(C=O)" in dsls
        assert "desc(ring_count)" in dsls

    def test_rule_budget(self, pipeline_run):
        config = pipeline_run["config"]
        upper = config.inference_batches * 3
        assert len(pipeline_run["inference"]) <= upper

    def test_provenance(self, pipeline_run):
        assert all(r.provenance == "inferred" for r in pipeline_run["inference"].rules)


class TestCombined:
    def test_merge_bounds(self, pipeline_run):
        assert len(pipeline_run["combined"]) <= len(pipeline_run["synthesis"]) + len(
            pipeline_run["inference"]
        )

    def test_no_duplicate_expressions(self, pipeline_run):
        dsls = [r.dsl for r in pipeline_run["combined"].rules]
        assert len(dsls) == len(set(dsls))


class TestTrain:
    def test_metrics_schema(self, pipeline_run):
        metrics = pipeline_run["trained"].metrics
        for partition in ("train", "valid", "test"):
            assert "auc_roc" in metrics[partition]

    def test_importances_match_ruleset(self, pipeline_run):
        trained = pipeline_run["trained"]
        assert len(trained.importances) == len(trained.ruleset)
        assert trained.importances.sum() == pytest.approx(1.0, abs=1e-9)

    def test_persisted_layout(self, pipeline_run):
        directory = pipeline_run["trained"].task_dir
        for name in (
            "ruleset.rules", "ruleset.json", "split.json", "model.json",
            "metrics.json", "config.json", "provenance.json",
            "verdicts.json", "verdicts.csv",
        ):
            assert os.path.exists(os.path.join(directory, name)), name

    def test_loaded_task_predicts_identically(self, pipeline_run):
        trained = pipeline_run["trained"]
        loaded = load_trained(trained.task_dir)
        probe = featurize(trained.ruleset, [parse_smiles("CCOc1ccccc1")]).values
        assert np.array_equal(
            loaded.model.predict_proba(probe), trained.model.predict_proba(probe)
        )

    def test_empty_ruleset_rejected(self, pipeline_run):
        with pytest.raises(ConfigError, match="empty ruleset"):
            run_train(pipeline_run["config"], RuleSet(task="bbbp", rules=()))

    def test_regression_metrics(self, tmp_path, esol_dataset):
        config = RunConfig(
            task="esol",
            oracle_mode="replay",
            transcript_path="unused",
            manual_rulesets=("x",),
            synthesis=False,
            inference=False,
            n_trees=20,
            model_seed=1,
            output_dir=str(tmp_path),
        )
        ruleset = RuleSet(
            task="esol",
            rules=(make_rule("clogp", "desc(clogp)"), make_rule("mw", "desc(mw)")),
        )
        split = make_split(config, esol_dataset)
        trained = run_train(config, ruleset, esol_dataset, split)
        assert trained.metrics["test"]["rmse"] >= trained.metrics["test"]["mae"] >= 0
        # the fixture's solubility is clogp-driven; two true features beat chance easily
        assert trained.metrics["test"]["rmse"] < 2.0


class TestValidate:
    def test_mw_and_carbonyl_significant(self, pipeline_run):
        by_dsl = {
            pipeline_run["combined"].get(v.rule_id).dsl: v for v in pipeline_run["verdicts"]
        }
        assert by_dsl["desc(mw)"].test.p_value < 0.05
        assert by_dsl["count(C=O)"].test.p_value < 0.05
        assert by_dsl["desc(mw)"].category == SIGNIFICANT_SUPPORTED
        assert by_dsl["count(C=O)"].category == SIGNIFICANT_NOT_FOUND

    def test_verdict_counts_cover_ruleset(self, pipeline_run):
        assert len(pipeline_run["verdicts"]) == len(pipeline_run["combined"])

    def test_constant_feature_insignificant(self, pipeline_run, tmp_path):
        config = pipeline_run["config"]
        ruleset = RuleSet(
            task="bbbp",
            rules=(make_rule("const", "has([NH4+])"), make_rule("mw", "desc(mw)")),
        )
        import copy

        config2 = copy.deepcopy(config)
        config2.output_dir = str(tmp_path)
        trained = run_train(config2, ruleset, pipeline_run["dataset"], pipeline_run["split"])
        verdicts = run_validate_rules(config2, trained, pipeline_run["dataset"])
        const = next(v for v in verdicts if v.rule_id == "const")
        assert const.test.degenerate and v_cat(const) == "insignificant"

    def test_missing_annotations_unreviewed(self, pipeline_run, tmp_path):
        import copy

        config = copy.deepcopy(pipeline_run["config"])
        config.annotations_path = ""
        config.output_dir = str(tmp_path)
        trained = run_train(
            config, pipeline_run["combined"], pipeline_run["dataset"], pipeline_run["split"]
        )
        verdicts = run_validate_rules(config, trained, pipeline_run["dataset"])
        assert all(v.literature_supported is None for v in verdicts)
        assert any(v.category == "significant+unreviewed" for v in verdicts)


def v_cat(verdict):
    return verdict.category


class TestExplain:
    def test_template_deterministic(self, pipeline_run):
        trained = pipeline_run["trained"]
        a = explain(trained, "CCO", k=3, mode="template")
        b = explain(trained, "CCO", k=3, mode="template")
        assert a.narrative == b.narrative
        assert a.generator == "template"

    def test_top_k_sorted(self, pipeline_run):
        result = explain(pipeline_run["trained"], "CCO", k=3, mode="template")
        assert len(result.contributions) == 3
        importances = [imp for *_, imp in result.contributions]
        assert importances == sorted(importances, reverse=True)

    def test_k_capped_at_ruleset(self, pipeline_run):
        trained = pipeline_run["trained"]
        result = explain(trained, "CCO", k=10_000, mode="template")
        assert len(result.contributions) == len(trained.ruleset)

    def test_llm_replay_narrative(self, pipeline_run):
        result = explain(
            pipeline_run["trained"], "CCOc1ccccc1", k=3, mode="llm",
            oracle=pipeline_run["oracle"],
        )
        assert result.generator == "llm"
        assert "blood brain barrier" in result.narrative

    def test_llm_fallback_on_miss(self, pipeline_run):
        result = explain(
            pipeline_run["trained"], "CCCCCCCCC", k=2, mode="llm",
            oracle=pipeline_run["oracle"],
        )
        assert result.generator == "template"
        assert "fallback" in result.notice


class TestAblation:
    def test_three_variants(self, tmp_path):
        from molrules.pipeline import run_ablation
        from conftest import fixture_config

        config = fixture_config(str(tmp_path / "runs"))
        results = run_ablation(config)
        assert set(results) == {"synthesis", "inference", "combined"}
        for trained in results.values():
            assert "auc_roc" in trained.metrics["test"]
        combined = results["combined"]
        assert len(combined.ruleset) <= len(results["synthesis"].ruleset) + len(
            results["inference"].ruleset
        )
        assert os.path.exists(os.path.join(config.output_dir, "ablation.json"))


class TestCli:
    def test_synth_infer_train_validate_explain(self, tmp_path, data_dir):
        from molrules.pipeline.cli import main

        out = tmp_path / "runs"
        config_path = tmp_path / "config.json"
        from conftest import fixture_config

        config = fixture_config(str(out))
        config_path.write_text(config.to_json())
        argv = ["--config", str(config_path)]
        assert main(["synth", *argv]) == 0
        assert main(["infer", *argv]) == 0
        assert (out / "synthesis.rules").exists()
        assert (out / "inference.rules").exists()
        assert main(["train", *argv]) == 0
        assert (out / "bbbp" / "model.json").exists()
        assert main(["validate", *argv]) == 0
        assert (out / "bbbp" / "verdicts.csv").exists()
        assert main(["explain", *argv, "--smiles", "CCO"]) == 0

    def test_usage_error_exit_code(self):
        from molrules.pipeline.cli import main

        assert main(["synth"]) == 1
        assert main(["bogus-verb"]) == 1

    def test_data_error_exit_code(self, tmp_path):
        from molrules.pipeline.cli import main
        from conftest import fixture_config

        config = fixture_config(str(tmp_path / "runs"))
        config.dataset_path = str(tmp_path / "missing.csv")
        path = tmp_path / "config.json"
        path.write_text(config.to_json())
        assert main(["infer", "--config", str(path)]) == 2

    def test_oracle_error_exit_code(self, tmp_path):
        from molrules.pipeline.cli import main
        from conftest import fixture_config

        config = fixture_config(str(tmp_path / "runs"))
        empty = tmp_path / "empty.jsonl"
        empty.write_text("")
        config.transcript_path = str(empty)
        path = tmp_path / "config.json"
        path.write_text(config.to_json())
        assert main(["synth", "--config", str(path)]) == 3
