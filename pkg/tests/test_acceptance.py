"""Acceptance criteria, one test per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS line
per criterion. Tolerances are pinned here, not configurable.
"""

import csv
import hashlib
import itertools
import json
import math
import os
import time
import warnings

import numpy as np
import pytest

from conftest import DATA_DIR, fixture_config

# pinned by the recorded fixture run; reruns must stay within +/-0.02
PINNED_E2E_TEST_AUC = 0.9444444444444444
# documented margin over chance for the fixture task (literature-backed
# determinants drive it far above 0.5)
E2E_AUC_CHANCE_MARGIN = 0.25


def _announce(name):
    print(f"\nACCEPTANCE [{name}] PASS")


class TestParserCorpus:
    def test_parser_corpus(self):
        from molrules.errors import SmilesParseError
        from molrules.molgraph import parse_smiles

        rows = []
        for filename, column in (
            ("bbbp_fixture.csv", "smiles"),
            ("esol_fixture.csv", "smiles"),
        ):
            with open(os.path.join(DATA_DIR, filename), newline="") as fh:
                rows.extend(row[column] for row in csv.DictReader(fh))
        assert len(rows) >= 500

        start = time.perf_counter()
        failures = []
        parsed = 0
        for smiles in rows:
            try:
                parse_smiles(smiles)
                parsed += 1
            except SmilesParseError as exc:
                failures.append((smiles, exc))
        elapsed = time.perf_counter() - start

        assert parsed / len(rows) >= 0.99, f"parse rate {parsed}/{len(rows)}"
        for smiles, exc in failures:
            assert exc.position is not None, f"no position for {smiles!r}"
        assert elapsed < 5.0, f"parsing took {elapsed:.2f}s"
        _announce(f"parser corpus: {parsed}/{len(rows)} in {elapsed:.2f}s")


class TestDescriptorOracle:
    def test_descriptor_oracle(self):
        from molrules.descriptors import compute
        from molrules.molgraph import parse_smiles

        columns = ["mw", "hbd", "hba", "ring_count", "rotatable_bonds", "tpsa", "clogp"]
        with open(os.path.join(DATA_DIR, "descriptor_fixture.csv"), newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 50
        for row in rows:
            mol = parse_smiles(row["smiles"])
            for column in columns:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    got = compute(mol, column)
                want = float(row[column])
                assert abs(got - want) <= 1e-2, (row["smiles"], column, got, want)
        _announce("descriptor oracle: 50 molecules x 7 descriptors within 1e-2")


class TestCrossModuleIdentity:
    def test_auc_equals_normalized_u(self):
        from molrules.stats import auc_roc, mann_whitney_u

        rng = np.random.default_rng(20240811)
        checked = 0
        worst = 0.0
        while checked < 1000:
            n = int(rng.integers(4, 80))
            scores = np.round(rng.normal(size=n), 1)
            labels = rng.integers(0, 2, size=n)
            n_pos = int(labels.sum())
            if n_pos in (0, n):
                continue
            u = mann_whitney_u(scores[labels == 1], scores[labels == 0]).statistic
            delta = abs(auc_roc(scores, labels) - u / (n_pos * (n - n_pos)))
            worst = max(worst, delta)
            checked += 1
        assert worst < 1e-9, worst
        _announce(f"cross-module identity: 1000 sets, worst |delta| = {worst:.2e}")


class TestStatisticsOracle:
    def test_statistics_oracle(self):
        from molrules.stats import betainc, erfc, mann_whitney_u, normal_sf, slope_t_test, student_sf

        # U equals exact pair-count enumeration for every n1, n2 <= 8
        def exact_u(a, b):
            wins = 0.0
            for x, y in itertools.product(a, b):
                wins += 1.0 if x > y else (0.5 if x == y else 0.0)
            return wins

        rng = np.random.default_rng(7)
        checked = 0
        for n1 in range(1, 9):
            for n2 in range(1, 9):
                for _ in range(8):
                    a = rng.integers(0, 5, size=n1).astype(float)
                    b = rng.integers(0, 5, size=n2).astype(float)
                    assert mann_whitney_u(a, b).statistic == pytest.approx(
                        exact_u(a, b), abs=1e-12
                    )
                    checked += 1

        # slope t-test against three closed-form hand computations
        exact = slope_t_test([1, 2, 3, 4], [2, 4, 6, 8])
        assert exact.exact_fit and exact.p_value == 0.0
        three = slope_t_test([1, 2, 3], [1, 3, 2])
        assert three.statistic == pytest.approx(1 / math.sqrt(3), abs=1e-12)
        assert three.p_value == pytest.approx(2 / 3, abs=1e-12)
        four = slope_t_test([0, 1, 2, 3], [1, 2, 2, 3])
        assert four.statistic == pytest.approx(0.6 / math.sqrt(0.02), abs=1e-12)
        assert four.p_value == pytest.approx(0.05131670194948623, abs=1e-9)

        # special functions against the pinned reference grid
        worst = 0.0
        with open(os.path.join(DATA_DIR, "special_grid.csv"), newline="") as fh:
            for row in csv.DictReader(fh):
                want = float(row["value"])
                fn = row["function"]
                if fn == "erfc":
                    got = erfc(float(row["arg1"]))
                elif fn == "normal_sf":
                    got = normal_sf(float(row["arg1"]))
                elif fn == "betainc":
                    got = betainc(float(row["arg1"]), float(row["arg2"]), float(row["arg3"]))
                else:
                    got = student_sf(float(row["arg1"]), float(row["arg2"]))
                worst = max(worst, abs(got - want))
        assert worst <= 1e-10, worst
        _announce(
            f"statistics oracle: {checked} exact-U checks, 3 slope fixtures, grid |err| <= {worst:.1e}"
        )


class TestLearnerProperties:
    def test_learner_properties(self):
        from molrules.learners import RandomForest, dumps_model, logistic_loss_and_grad

        rng = np.random.default_rng(99)
        X = rng.normal(size=(100, 5))
        y = ((X[:, 0] - 0.5 * X[:, 3]) > 0).astype(int)

        first = RandomForest(n_trees=30, seed=12).fit(X, y)
        second = RandomForest(n_trees=30, seed=12).fit(X, y)
        hash_a = hashlib.sha256(dumps_model(first).encode()).hexdigest()
        hash_b = hashlib.sha256(dumps_model(second).encode()).hexdigest()
        assert hash_a == hash_b

        single = RandomForest(n_trees=1, bootstrap=False, seed=0).fit(X, y)
        assert (single.predict(X) == y).all()

        assert first.feature_importances_.sum() == pytest.approx(1.0, abs=1e-9)

        w = rng.normal(size=5)
        b = -0.2
        _, grad_w, grad_b = logistic_loss_and_grad(w, b, X, y.astype(float), l2=0.4)
        eps = 1e-6
        for i in range(5):
            wp, wm = w.copy(), w.copy()
            wp[i] += eps
            wm[i] -= eps
            lp = logistic_loss_and_grad(wp, b, X, y.astype(float), l2=0.4)[0]
            lm = logistic_loss_and_grad(wm, b, X, y.astype(float), l2=0.4)[0]
            numeric = (lp - lm) / (2 * eps)
            assert abs(numeric - grad_w[i]) / max(abs(grad_w[i]), 1e-12) < 1e-6
        _announce(f"learner properties: model hash {hash_a[:12]}..., exact fit, MDI sum, gradient")


class TestScaffoldSplitAcceptance:
    def test_scaffold_split(self, bbbp_dataset):
        from molrules.datasets import scaffold_split
        from molrules.datasets.splits import scaffold_key

        split = scaffold_split(bbbp_dataset)
        rerun = scaffold_split(bbbp_dataset)
        assert split.to_json().encode() == rerun.to_json().encode()

        train, valid, test = set(split.train), set(split.valid), set(split.test)
        assert not (train & valid) and not (train & test) and not (valid & test)
        modelable = {r.row_id for r in bbbp_dataset.modelable_records()}
        assert train | valid | test == modelable

        groups: dict[str, set[int]] = {}
        for row_id in modelable:
            groups.setdefault(scaffold_key(bbbp_dataset, row_id), set()).add(row_id)
        largest = max(len(members) for members in groups.values())
        n = len(modelable)
        assert abs(len(train) - 0.8 * n) <= largest
        assert abs(len(valid) - 0.1 * n) <= largest
        assert abs(len(test) - 0.1 * n) <= largest
        for members in groups.values():
            hit = [p for p in (train, valid, test) if members & p]
            assert len(hit) == 1
        _announce(
            f"scaffold split: {len(train)}/{len(valid)}/{len(test)} over {len(groups)} groups"
        )


class TestEndToEndReplay:
    def test_end_to_end_replay(self, tmp_path):
        from molrules.pipeline.cli import main

        def run_once(label):
            out = tmp_path / label
            config = fixture_config(str(out))
            config_path = tmp_path / f"{label}.json"
            config_path.write_text(config.to_json())
            argv = ["--config", str(config_path)]
            start = time.perf_counter()
            assert main(["synth", *argv]) == 0
            assert main(["infer", *argv]) == 0
            assert main(["train", *argv]) == 0
            elapsed = time.perf_counter() - start
            task_dir = out / "bbbp"
            digests = {
                name: hashlib.sha256((task_dir / name).read_bytes()).hexdigest()
                for name in ("ruleset.rules", "model.json", "metrics.json")
            }
            digests["synthesis.rules"] = hashlib.sha256(
                (out / "synthesis.rules").read_bytes()
            ).hexdigest()
            metrics = json.loads((task_dir / "metrics.json").read_text())
            return elapsed, digests, metrics

        elapsed_a, digests_a, metrics_a = run_once("run-a")
        elapsed_b, digests_b, metrics_b = run_once("run-b")

        assert elapsed_a < 60.0, f"pipeline took {elapsed_a:.1f}s"
        assert digests_a == digests_b, "replay outputs are not deterministic"
        auc = metrics_a["test"]["auc_roc"]
        assert auc > 0.5 + E2E_AUC_CHANCE_MARGIN
        assert abs(auc - PINNED_E2E_TEST_AUC) <= 0.02
        _announce(f"end-to-end replay: {elapsed_a:.1f}s, test AUC {auc:.4f} (pinned {PINNED_E2E_TEST_AUC:.4f})")


class TestRuleValidationAcceptance:
    def test_rule_validation(self, bbbp_config, bbbp_dataset):
        from molrules.pipeline import (
            make_oracle,
            make_split,
            run_inference,
            run_synthesis,
            run_train,
            run_validate_rules,
        )
        from molrules.rulekit import merge_rulesets

        split = make_split(bbbp_config, bbbp_dataset)
        oracle = make_oracle(bbbp_config)
        syn, _ = run_synthesis(bbbp_config, oracle)
        inf, _ = run_inference(bbbp_config, oracle, bbbp_dataset, split)
        combined = merge_rulesets("bbbp", syn, inf)
        trained = run_train(bbbp_config, combined, bbbp_dataset, split)

        def categorize():
            verdicts = run_validate_rules(bbbp_config, trained, bbbp_dataset)
            counts: dict[str, int] = {}
            for v in verdicts:
                counts[v.category] = counts.get(v.category, 0) + 1
            return verdicts, counts

        verdicts, counts = categorize()
        _, counts_again = categorize()
        assert counts == counts_again, "categorization unstable across reruns"
        assert sum(counts.values()) == len(combined)

        by_dsl = {combined.get(v.rule_id).dsl: v for v in verdicts}
        assert by_dsl["desc(mw)"].test.p_value < 0.05
        assert by_dsl["count(C=O)"].test.p_value < 0.05
        _announce(
            f"rule validation: mw p={by_dsl['desc(mw)'].test.p_value:.2e}, "
            f"C=O p={by_dsl['count(C=O)'].test.p_value:.2e}, categories {counts}"
        )


class TestPromptGoldens:
    def test_prompt_goldens(self):
        from molrules.oracle import build_inference_prompt, build_synthesis_prompt, get_task

        synthesis_bbbp = build_synthesis_prompt(get_task("bbbp"), 30).text
        assert synthesis_bbbp == (
            "Assumed you are an experienced chemist. Please come up with 30 rules that you "
            "think are very important to predict if a molecule is blood brain barrier "
            "permeable (BBBP). Each rule is either about the structure or property of a "
            "molecule."
        )
        synthesis_20 = build_synthesis_prompt(get_task("bbbp"), 20).text
        assert synthesis_20 == synthesis_bbbp.replace("30 rules", "20 rules")

        qm9 = build_synthesis_prompt(get_task("qm9-mu"), 30).text
        assert qm9 == (
            "Assumed you are an experienced chemist. Please come up with 30 rules that you "
            "think are very important to predict dipole moment (Mu) of a molecule. Each rule "
            "is either about the structure or property of a molecule (without access to 3D "
            "information)."
        )

        esol_synth = build_synthesis_prompt(get_task("esol"), 30).text
        assert esol_synth == (
            "Assumed you are an experienced chemist. Please come up with 30 rules that you "
            "think are very important to predict the water solubility data (log solubility "
            "in mols per litre). Each rule is either about the structure or property of a "
            "molecule."
        )

        inference_cls = build_inference_prompt(get_task("bbbp"), [("CCO", 1)]).text
        assert inference_cls == (
            "Assume you are a very experienced Chemist. In the following data, with label 1, "
            "it means a molecule is blood brain barrier permeable (BBBP). With label 0, it "
            "means it is not. Please infer step-by-step to come up with 3 rules that "
            "directly relate the properties/structures of a molecule.\nCCO 1"
        )

        inference_reg = build_inference_prompt(get_task("esol"), [("CCO", -0.77)]).text
        assert inference_reg == (
            "Assume you are a very experienced chemist. The following data includes "
            "molecules and their corresponding value the water solubility data (log "
            "solubility in mols per litre). Please infer step-by-step to come up with 3 "
            "rules that directly relate the properties/structures of a molecule.\nCCO -0.77"
        )

        inference_qm9 = build_inference_prompt(get_task("qm9-mu"), [("C", 0.0)]).text
        assert inference_qm9.endswith(
            "directly relate the properties/structures of a molecule "
            "(without access to 3D information).\nC 0"
        )
        _announce("prompt goldens: synthesis/inference templates byte-for-byte")
