#!/usr/bin/env python3
"""Record the replay transcript fixture for the permeability pipeline.

Runs the full pipeline (synthesis, inference, train, validate, explain)
against a scripted backend whose responses are written here, recording
every exchange into tests/data/transcript_bbbp.jsonl. Tests then replay
that transcript; reruns are byte-deterministic. Also writes the fixture
run config and the literature-annotation CSV, and prints the test AUC
so the regression threshold can be pinned.

Usage: python3 tools/make_transcript_fixture.py
"""

import json
import os
import shutil
import sys
import tempfile

from molrules.oracle import Transcript
from molrules.pipeline import RunConfig, explain, run_inference, run_synthesis, run_train, run_validate_rules
from molrules.pipeline.runner import load_dataset, make_split
from molrules.rulekit import merge_rulesets

DATA_DIR = "tests/data"
TRANSCRIPT = os.path.join(DATA_DIR, "transcript_bbbp.jsonl")
CONFIG_FILE = os.path.join(DATA_DIR, "bbbp_config.json")
ANNOTATIONS = os.path.join(DATA_DIR, "annotations_bbbp.csv")

SYNTHESIS_RESPONSE = """Here are 30 rules for predicting blood brain barrier permeability:
1. Molecular weight should be below 450 Da for good brain penetration.
2. Lipophilicity (logP) between 1 and 3 favours permeation.
3. The octanol/water distribution coefficient (logD) strongly influences uptake.
4. Topological polar surface area should stay under 90 square angstroms.
5. Count the number of hydrogen bond donors; fewer than 3 is favourable.
6. Hydrogen bond acceptors should number fewer than 7.
7. The number of rotatable bonds relates to passive diffusion.
8. Aromatic ring count above 3 reduces permeability.
9. Molecules carrying a net formal charge at physiological pH cross poorly.
10. Halogen substituents can increase membrane affinity.
11. Overall molecular size measured as heavy atom count matters.
12. Amide groups reduce CNS exposure.
13. A carboxylic acid group is detrimental to brain uptake.
14. Hydroxyl groups add polarity and lower permeation.
15. Presence of a nitro group is a negative indicator.
16. Nitrile functionality is usually tolerated.
17. Basic amine centres promote uptake via cation transport.
18. An ester motif may be hydrolysed before reaching the barrier.
19. A phenyl ring is a common scaffold in CNS drugs.
20. The total ring count of the framework matters.
21. Maximum ring size beyond 7 is rare among permeant molecules.
22. Molecular flexibility should be limited.
23. Sulfur atoms can improve metabolic stability.
24. Count nitrogen atoms; moderate numbers are typical.
25. Count oxygen atoms as a proxy for polarity.
26. Double bonds increase rigidity.
27. Triple bonds are uncommon in CNS space.
28. Hydrogen bonding overall should be minimized.
29. Consider the molecule's smell.
30. Favourable pharmacokinetic profile in rodent studies is desirable.
"""

INFERENCE_RESPONSES = [
    "1. Molecules with a carbonyl functional group are mostly label 0.\n"
    "2. Fragment rings in the scaffold correlate with label 0.\n"
    "3. Higher lipophilicity appears among label 1 molecules.",
    "1. Low molecular weight dominates label 1.\n"
    "2. Polar surface area is lower for label 1 molecules.\n"
    "3. Hydrogen bond donors are fewer in label 1.",
    "1. Halogen substituents are enriched in label 1.\n"
    "2. Aromatic ring count is slightly higher in label 0.\n"
    "3. Rotatable bond count is lower in label 1.",
    "1. Molecules with a carbonyl functional group are mostly label 0.\n"
    "2. Hydroxyl groups are more common in label 0.\n"
    "3. Basic amine centres appear in both classes.",
    "1. Low molecular weight dominates label 1.\n"
    "2. Nitro groups occur mainly in label 0.\n"
    "3. Ester motifs are infrequent overall.",
    "1. Polar surface area is lower for label 1 molecules.\n"
    "2. Nitrile groups show no clear trend.\n"
    "3. Double bonds are slightly enriched in label 0.",
    "1. Fragment rings in the scaffold correlate with label 0.\n"
    "2. Heavy atom count is lower in label 1.\n"
    "3. Sulfur atoms are rare in both classes.",
    "1. Higher lipophilicity appears among label 1 molecules.\n"
    "2. Net formal charge is uncommon in this data.\n"
    "3. Count of oxygen atoms tracks polarity and label 0.",
    "1. Molecules with a carbonyl functional group are mostly label 0.\n"
    "2. Hydrogen bond donors are fewer in label 1.\n"
    "3. A phenyl ring is present in most molecules.",
    "1. Low molecular weight dominates label 1.\n"
    "2. Fragment rings in the scaffold correlate with label 0.\n"
    "3. Label 1 molecules smell sweeter.",
]

SUMMARY_RESPONSE = """1. Molecules with a carbonyl functional group are mostly label 0.
2. Fragment rings in the scaffold correlate with label 0.
3. Higher lipophilicity appears among label 1 molecules.
4. Low molecular weight dominates label 1.
5. Polar surface area is lower for label 1 molecules.
6. Hydrogen bond donors are fewer in label 1.
7. Halogen substituents are enriched in label 1.
8. Aromatic ring count is slightly higher in label 0.
9. Rotatable bond count is lower in label 1.
10. Hydroxyl groups are more common in label 0.
11. Basic amine centres appear in both classes.
12. Nitro groups occur mainly in label 0.
13. Ester motifs are infrequent overall.
14. Nitrile groups show no clear trend.
15. Double bonds are slightly enriched in label 0.
16. Heavy atom count is lower in label 1.
17. Sulfur atoms are rare in both classes.
18. Net formal charge is uncommon in this data.
19. Count of oxygen atoms tracks polarity and label 0.
20. A phenyl ring is present in most molecules.
21. Label 1 molecules smell sweeter.
"""

EXPLAIN_RESPONSE = (
    "The model predicts this molecule is likely to cross the blood brain barrier. "
    "Its molecular weight sits comfortably below the range the model associates with "
    "poor penetration, and it carries no carbonyl group, a feature the model links to "
    "impermeable molecules. Moderate lipophilicity further supports passive diffusion. "
    "Together these factors account for the bulk of the model's decision."
)


class ScriptedOracle:
    """Backend stand-in: canned responses plus transcript recording."""

    mode = "record"

    def __init__(self, transcript: Transcript):
        self.transcript = transcript
        self._inference_served = 0

    def complete(self, prompt) -> str:
        text = prompt.text if hasattr(prompt, "text") else prompt
        if text.startswith("Assumed you are an experienced"):
            response = SYNTHESIS_RESPONSE
        elif text.startswith("Assume you are a very experienced"):
            response = INFERENCE_RESPONSES[self._inference_served % len(INFERENCE_RESPONSES)]
            self._inference_served += 1
        elif text.startswith("You are given candidate rules"):
            response = SUMMARY_RESPONSE
        elif text.startswith("A trained interpretable model"):
            response = EXPLAIN_RESPONSE
        else:
            raise AssertionError(f"unscripted prompt: {text[:80]!r}")
        self.transcript.record_exchange(text, response, "scripted-fixture")
        return response


def fixture_config(output_dir: str) -> RunConfig:
    return RunConfig(
        task="bbbp",
        dataset_path=os.path.join(DATA_DIR, "bbbp_fixture.csv"),
        smiles_column="smiles",
        label_column="p_np",
        split_method="scaffold",
        oracle_mode="replay",
        transcript_path=TRANSCRIPT,
        synthesis=True,
        inference=True,
        synthesis_rule_count=30,
        inference_batch_size=25,
        inference_batches=10,
        inference_seed=11,
        model_kind="forest",
        n_trees=100,
        model_seed=7,
        annotations_path=ANNOTATIONS,
        output_dir=output_dir,
    )


def main():
    if os.path.exists(TRANSCRIPT):
        os.remove(TRANSCRIPT)
    transcript = Transcript(TRANSCRIPT)
    oracle = ScriptedOracle(transcript)

    workdir = tempfile.mkdtemp(prefix="molrules-fixture-")
    config = fixture_config(workdir)
    dataset = load_dataset(config)
    split = make_split(config, dataset)

    syn, syn_skipped = run_synthesis(config, oracle)
    inf, inf_skipped = run_inference(config, oracle, dataset, split)
    combined = merge_rulesets(config.task, syn, inf)
    trained = run_train(config, combined, dataset, split)

    # literature annotations for the combined ruleset: the five classic
    # permeability determinants are marked supported; the data-derived
    # carbonyl/ring rules are marked not-found
    supported_dsl = {"desc(mw)", "desc(clogp)", "desc(tpsa)", "desc(hbd)", "desc(hba)"}
    notfound_dsl = {"count(C=O)", "desc(ring_count)"}
    with open(ANNOTATIONS, "w") as fh:
        fh.write("rule_id,supported,citation_note\n")
        for rule in combined.rules:
            if rule.dsl in supported_dsl:
                fh.write(f"{rule.id},1,classic permeability determinant\n")
            elif rule.dsl in notfound_dsl:
                fh.write(f"{rule.id},0,data-derived structural cue\n")
    verdicts = run_validate_rules(config, trained, dataset)

    probe = "CCOc1ccccc1"
    explanation = explain(trained, probe, k=3, mode="llm", oracle=oracle)

    with open(CONFIG_FILE, "w") as fh:
        obj = fixture_config("OUTPUT_DIR_PLACEHOLDER").to_obj()
        json.dump(obj, fh, indent=2, sort_keys=True)

    by_dsl = {r.dsl for r in syn.rules}
    assert supported_dsl <= by_dsl, f"missing determinants: {supported_dsl - by_dsl}"
    inf_dsl = {r.dsl for r in inf.rules}
    assert "count(C=O)" in inf_dsl and "desc(ring_count)" in inf_dsl

    categories = {}
    for v in verdicts:
        categories[v.category] = categories.get(v.category, 0) + 1

    print(f"synthesis rules: {len(syn)} (skipped {len(syn_skipped)})")
    print(f"inference rules: {len(inf)} (skipped {len(inf_skipped)})")
    print(f"combined rules:  {len(combined)}")
    print(f"metrics: {json.dumps(trained.metrics, sort_keys=True)}")
    print(f"verdict categories: {categories}")
    mw_rule = next(r for r in combined.rules if r.dsl == "desc(mw)")
    co_rule = next(r for r in combined.rules if r.dsl == "count(C=O)")
    for rule in (mw_rule, co_rule):
        verdict = next(v for v in verdicts if v.rule_id == rule.id)
        print(f"{rule.dsl} ({rule.id}): p = {verdict.test.p_value:.3g}, {verdict.category}")
    print(f"explain generator: {explanation.generator}")
    shutil.rmtree(workdir)


if __name__ == "__main__":
    main()
