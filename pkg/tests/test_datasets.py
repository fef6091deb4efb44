import warnings

import pytest

from molrules.datasets import (
    load_csv,
    load_multitask_csv,
    random_split,
    sample_batches,
    scaffold_split,
)
from molrules.datasets.splits import scaffold_key
from molrules.errors import DataError


class TestLoadCsv:
    def test_bbbp_fixture(self, bbbp_dataset):
        assert len(bbbp_dataset) == 300
        assert bbbp_dataset.report.parsed == 298
        assert len(bbbp_dataset.report.failures) == 2
        for _, message in bbbp_dataset.report.failures:
            assert "position" in message

    def test_esol_fixture(self, esol_dataset):
        assert len(esol_dataset) == 260
        assert esol_dataset.report.parsed == 259

    def test_ingestion_lossless(self, bbbp_dataset):
        assert bbbp_dataset.report.parsed + len(bbbp_dataset.report.failures) == len(bbbp_dataset)

    def test_failures_excluded_from_modeling(self, bbbp_dataset):
        assert all(r.molecule is not None for r in bbbp_dataset.modelable_records())

    def test_missing_file(self):
        with pytest.raises(DataError, match="not found"):
            load_csv("/nonexistent.csv", "smiles", "y", "bbbp", "classification")

    def test_missing_column(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b\n1,2\n")
        with pytest.raises(DataError, match="missing columns"):
            load_csv(path, "smiles", "y", "bbbp", "classification")

    def test_header_only(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("smiles,y\n")
        with pytest.raises(DataError, match="no data rows"):
            load_csv(path, "smiles", "y", "bbbp", "classification")

    def test_zero_parseable(self, tmp_path):
        path = tmp_path / "junk.csv"
        path.write_text("smiles,y\nnot_a_smiles(,1\n")
        with pytest.raises(DataError, match="zero parseable"):
            load_csv(path, "smiles", "y", "custom", "classification")

    def test_count_mismatch_warns(self, tmp_path):
        path = tmp_path / "tiny.csv"
        path.write_text("smiles,y\nC,1\nCC,0\n")
        with pytest.warns(UserWarning, match="manifest declares"):
            ds = load_csv(path, "smiles", "y", "bbbp", "classification")
        assert ds.report.count_mismatch

    def test_multitask_shares_molecules(self, tmp_path):
        path = tmp_path / "panel.csv"
        path.write_text("smiles,t1,t2\nCCO,1,\nCC,0,1\nc1ccccc1,1,0\n")
        panel = load_multitask_csv(path, "smiles", ["t1", "t2"], "custom", "classification")
        assert set(panel) == {"t1", "t2"}
        assert panel["t1"].records[0].molecule is panel["t2"].records[0].molecule
        assert panel["t2"].records[0].label is None  # blank cell -> absent
        assert panel["t2"].report.missing_labels == 1

    def test_bad_label_value(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("smiles,y\nC,maybe\n")
        with pytest.raises(DataError, match="not numeric"):
            load_csv(path, "smiles", "y", "custom", "classification")

    def test_non_binary_classification_label(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("smiles,y\nC,2\n")
        with pytest.raises(DataError, match="0/1"):
            load_csv(path, "smiles", "y", "custom", "classification")


class TestScaffoldSplit:
    def test_partitions_disjoint_exhaustive(self, bbbp_dataset):
        split = scaffold_split(bbbp_dataset)
        train, valid, test = set(split.train), set(split.valid), set(split.test)
        assert not (train & valid) and not (train & test) and not (valid & test)
        modelable = {r.row_id for r in bbbp_dataset.modelable_records()}
        assert train | valid | test == modelable

    def test_no_scaffold_spans_partitions(self, bbbp_dataset):
        split = scaffold_split(bbbp_dataset)
        seen: dict[str, str] = {}
        for name in ("train", "valid", "test"):
            for row_id in split.partition(name):
                key = scaffold_key(bbbp_dataset, row_id)
                assert seen.setdefault(key, name) == name

    def test_fractions_hit_within_one_group(self, bbbp_dataset):
        split = scaffold_split(bbbp_dataset)
        n = sum(len(split.partition(p)) for p in ("train", "valid", "test"))
        groups: dict[str, int] = {}
        for r in bbbp_dataset.modelable_records():
            key = scaffold_key(bbbp_dataset, r.row_id)
            groups[key] = groups.get(key, 0) + 1
        largest = max(groups.values())
        assert abs(len(split.train) - 0.8 * n) <= largest
        assert abs(len(split.valid) - 0.1 * n) <= largest

    def test_deterministic_rerun(self, bbbp_dataset):
        assert scaffold_split(bbbp_dataset) == scaffold_split(bbbp_dataset)

    def test_shared_scaffold_never_separated(self, tmp_path):
        rows = ["c1ccccc1,1", "Cc1ccccc1,0", "CCc1ccccc1,1", "OCc1ccccc1,0"]
        rows += [f"{'C' * i}N,{i % 2}" for i in range(2, 12)]
        path = tmp_path / "mix.csv"
        path.write_text("smiles,y\n" + "\n".join(rows) + "\n")
        ds = load_csv(path, "smiles", "y", "custom", "classification")
        split = scaffold_split(ds)
        benzene_rows = {0, 1, 2, 3}
        partitions = [
            name for name in ("train", "valid", "test")
            if benzene_rows & set(split.partition(name))
        ]
        assert len(partitions) == 1

    def test_all_distinct_scaffolds_sizes(self, tmp_path):
        smiles = [
            "c1ccccc1", "C1CCCCC1", "c1ccncc1", "C1CCNCC1", "c1ccoc1",
            "C1CCOC1", "c1ccsc1", "C1CCSC1", "c1cnccn1", "C1CNCCN1",
        ]
        path = tmp_path / "ten.csv"
        path.write_text("smiles,y\n" + "\n".join(f"{s},{i % 2}" for i, s in enumerate(smiles)) + "\n")
        ds = load_csv(path, "smiles", "y", "custom", "classification")
        split = scaffold_split(ds)
        assert (len(split.train), len(split.valid), len(split.test)) == (8, 1, 1)

    def test_giant_group_lands_in_train(self, tmp_path):
        rows = [f"{'C' * i}c1ccccc1,{i % 2}" for i in range(1, 19)]  # one scaffold, 90%
        rows += ["CCCCN,1", "CCCCO,0"]
        path = tmp_path / "giant.csv"
        path.write_text("smiles,y\n" + "\n".join(rows) + "\n")
        ds = load_csv(path, "smiles", "y", "custom", "classification")
        split = scaffold_split(ds)
        assert len(split.train) >= 18

    def test_too_few_rows(self, tmp_path):
        path = tmp_path / "tiny.csv"
        path.write_text("smiles,y\n" + "\n".join(f"{'C' * i}O,1" for i in range(1, 6)) + "\n")
        ds = load_csv(path, "smiles", "y", "custom", "classification")
        with pytest.raises(DataError, match="at least 10"):
            scaffold_split(ds)


class TestRandomSplit:
    def test_same_seed_identical(self, bbbp_dataset):
        assert random_split(bbbp_dataset, seed=4) == random_split(bbbp_dataset, seed=4)

    def test_different_seeds_differ(self, bbbp_dataset):
        assert random_split(bbbp_dataset, seed=1) != random_split(bbbp_dataset, seed=2)

    def test_bad_fractions(self, bbbp_dataset):
        with pytest.raises(DataError, match="sum to 1"):
            random_split(bbbp_dataset, fractions=(0.5, 0.2, 0.2))

    def test_partition_sizes(self, bbbp_dataset):
        split = random_split(bbbp_dataset, seed=0)
        n = len(bbbp_dataset.modelable_records())
        assert abs(len(split.train) - 0.8 * n) <= 1
        assert abs(len(split.valid) - 0.1 * n) <= 1

    def test_json_roundtrip(self, bbbp_dataset):
        from molrules.datasets import Split

        split = random_split(bbbp_dataset, seed=3)
        assert Split.from_json(split.to_json()) == split


class TestSampleBatches:
    def test_distinct_rows_within_batch(self, bbbp_dataset):
        split = scaffold_split(bbbp_dataset)
        batches = sample_batches(bbbp_dataset, split.train, batch_size=10, n_batches=5, seed=0)
        assert len(batches) == 5
        for batch in batches:
            ids = [r.row_id for r in batch]
            assert len(ids) == len(set(ids)) == 10

    def test_balanced_when_possible(self, bbbp_dataset):
        split = scaffold_split(bbbp_dataset)
        for batch in sample_batches(bbbp_dataset, split.train, 10, 4, seed=1):
            labels = [r.label for r in batch]
            assert labels.count(1) == 5 and labels.count(0) == 5

    def test_deterministic(self, bbbp_dataset):
        split = scaffold_split(bbbp_dataset)
        a = sample_batches(bbbp_dataset, split.train, 8, 3, seed=9)
        b = sample_batches(bbbp_dataset, split.train, 8, 3, seed=9)
        assert [[r.row_id for r in batch] for batch in a] == [
            [r.row_id for r in batch] for batch in b
        ]

    def test_batch_too_large(self, bbbp_dataset):
        split = scaffold_split(bbbp_dataset)
        with pytest.raises(DataError, match="exceeds partition size"):
            sample_batches(bbbp_dataset, split.valid, batch_size=10_000, n_batches=1, seed=0)

    def test_regression_sampling(self, esol_dataset):
        split = scaffold_split(esol_dataset)
        batches = sample_batches(esol_dataset, split.train, 6, 2, seed=5)
        assert all(len(b) == 6 for b in batches)
