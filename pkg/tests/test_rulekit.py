import numpy as np
import pytest

from molrules.errors import RuleParseError, RulesetFormatError
from molrules.molgraph import parse_smiles
from molrules.rulekit import (
    BINARY,
    INTEGER,
    REAL,
    DivisionByZeroWarning,
    RuleFeaturizer,
    RuleSet,
    evaluate_expr,
    featurize,
    load_ruleset,
    make_rule,
    merge_rulesets,
    parse_rule,
    print_expr,
    ruleset_from_json,
    ruleset_to_json,
    save_ruleset,
    value_kind,
)

ROUND_TRIP_CASES = [
    "desc(mw)",
    "count(C=O)",
    "has(c1ccccc1)",
    "0.5*desc(mw) + 2*count(C=O)",
    "desc(hbd) / desc(hba)",
    "-1.5*desc(mw) + 3*(desc(hbd) / desc(hba))",
    "count(CC(=O)O)",
    "desc(mw) - 1*desc(tpsa)",
]


class TestParse:
    def test_descriptor_reference(self):
        expr = parse_rule("desc(mw)")
        assert print_expr(expr) == "desc(mw)"
        assert value_kind(expr) == REAL

    def test_pattern_count(self):
        expr = parse_rule("count(C=O)")
        assert value_kind(expr) == INTEGER

    def test_has_is_binary(self):
        assert value_kind(parse_rule("has(C=O)")) == BINARY

    def test_unknown_descriptor(self):
        with pytest.raises(RuleParseError, match="unknown descriptor"):
            parse_rule("desc(nope)")

    @pytest.mark.parametrize(
        "text",
        ["", "desc(mw", "count()", "desc(mw) +", "2 * 3", "desc(mw) desc(hba)", "count($([*]))"],
    )
    def test_grammar_errors(self, text):
        with pytest.raises(RuleParseError):
            parse_rule(text)

    def test_error_carries_position(self):
        with pytest.raises(RuleParseError) as excinfo:
            parse_rule("desc(mw) + !")
        assert excinfo.value.position is not None

    @pytest.mark.parametrize("text", ROUND_TRIP_CASES)
    def test_parse_print_identity(self, text):
        expr = parse_rule(text)
        assert parse_rule(print_expr(expr)) == expr


class TestEvaluate:
    def test_has_benzene_on_toluene(self):
        rule = make_rule("r", "has(c1ccccc1)")
        assert rule.evaluate(parse_smiles("Cc1ccccc1")) == 1.0

    def test_count_two_carbonyls(self):
        rule = make_rule("r", "count(C=O)")
        assert rule.evaluate(parse_smiles("CC(=O)OC(=O)C")) == 2.0

    def test_descriptor_value(self):
        rule = make_rule("r", "desc(mw)")
        assert rule.evaluate(parse_smiles("O")) == pytest.approx(18.015)

    def test_division_guard_with_sink(self):
        rule = make_rule("r", "desc(mw) / count(N)")
        sink = []
        assert rule.evaluate(parse_smiles("CC"), sink) == 0.0
        assert len(sink) == 1 and "zero denominator" in sink[0]

    def test_division_guard_warns_without_sink(self):
        rule = make_rule("r", "desc(mw) / count(N)")
        with pytest.warns(DivisionByZeroWarning):
            assert rule.evaluate(parse_smiles("CC")) == 0.0

    def test_invariant_under_rewrite(self):
        rule = make_rule("r", "2*count(C=O) + 0.1*desc(mw)")
        a = rule.evaluate(parse_smiles("CC(=O)O"))
        b = rule.evaluate(parse_smiles("OC(C)=O"))
        assert a == pytest.approx(b, abs=1e-9)


class TestFeaturize:
    def _ruleset(self):
        return RuleSet(
            task="demo",
            rules=(make_rule("r1", "desc(mw)"), make_rule("r2", "has(C=O)")),
        )

    def test_zero_rules(self):
        matrix = featurize(RuleSet(task="x", rules=()), [parse_smiles("C"), parse_smiles("CC")])
        assert matrix.values.shape == (2, 0)

    def test_acetaldehyde_values(self):
        matrix = featurize(self._ruleset(), [parse_smiles("CC=O")])
        assert matrix.values.tolist() == [[pytest.approx(44.053), 1.0]]

    def test_row_permutation(self):
        mols = [parse_smiles(s) for s in ("CCO", "CC=O", "c1ccccc1")]
        forward = featurize(self._ruleset(), mols)
        backward = featurize(self._ruleset(), mols[::-1])
        assert np.array_equal(forward.values, backward.values[::-1])

    def test_columns_match_pointwise_evaluation(self):
        mols = [parse_smiles(s) for s in ("CCO", "CC(=O)O", "c1ccccc1")]
        ruleset = self._ruleset()
        matrix = featurize(ruleset, mols)
        for j, rule in enumerate(ruleset.rules):
            for i, mol in enumerate(mols):
                assert matrix.values[i, j] == rule.evaluate(mol)

    def test_warnings_recorded_per_cell(self):
        ruleset = RuleSet(task="demo", rules=(make_rule("ratio", "desc(mw) / count(N)"),))
        matrix = featurize(ruleset, [parse_smiles("CC"), parse_smiles("CN")])
        assert matrix.values[0, 0] == 0.0
        assert matrix.values[1, 0] > 0
        assert len(matrix.warnings) == 1
        assert matrix.warnings[0][0] == 0 and matrix.warnings[0][1] == "ratio"

    def test_featurizer_transform(self):
        featurizer = RuleFeaturizer(self._ruleset()).fit()
        out = featurizer.transform(["CC=O", "CCO"])
        assert out.shape == (2, 2)
        assert featurizer.feature_names_out() == ["r1", "r2"]


class TestRuleSet:
    def test_duplicate_ids_rejected(self):
        with pytest.raises(ValueError, match="duplicate rule id"):
            RuleSet(task="t", rules=(make_rule("a", "desc(mw)"), make_rule("a", "desc(hba)")))

    def test_merge_drops_structural_duplicates(self):
        first = RuleSet(task="t", rules=(make_rule("a", "desc(mw)"),))
        second = RuleSet(
            task="t", rules=(make_rule("b", "desc(mw)"), make_rule("c", "count(C=O)"))
        )
        merged = merge_rulesets("t", first, second)
        assert merged.ids() == ("a", "c")
        assert len(merged) <= len(first) + len(second)


class TestRoundTrip:
    def _ruleset(self):
        return RuleSet(
            task="demo",
            rules=(
                make_rule("r1", "desc(mw)", source_text="weight matters", provenance="synthesized"),
                make_rule("r2", "count(C=O)", source_text="count | carbonyls\nplease", provenance="inferred"),
            ),
        )

    def test_text_roundtrip(self, tmp_path):
        path = tmp_path / "rules.txt"
        original = self._ruleset()
        save_ruleset(original, path)
        loaded = load_ruleset(path)
        assert loaded.task == original.task
        assert loaded.rules == original.rules

    def test_json_roundtrip(self):
        original = self._ruleset()
        assert ruleset_from_json(ruleset_to_json(original)).rules == original.rules

    def test_empty_ruleset_roundtrip(self, tmp_path):
        path = tmp_path / "empty.txt"
        save_ruleset(RuleSet(task="none", rules=()), path)
        loaded = load_ruleset(path)
        assert loaded.task == "none" and len(loaded) == 0

    def test_duplicate_ids_in_file(self, tmp_path):
        path = tmp_path / "dup.txt"
        path.write_text(
            "#task: t\nr1 | manual | desc(mw) | x\nr1 | manual | desc(hba) | y\n"
        )
        with pytest.raises(RulesetFormatError, match="duplicate"):
            load_ruleset(path)

    def test_malformed_line_diagnostics(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("#task: t\nonly | three | fields\n")
        with pytest.raises(RulesetFormatError, match=":2"):
            load_ruleset(path)
