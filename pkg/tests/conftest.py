import json
import os
import warnings

import pytest

from molrules.datasets import load_csv
from molrules.pipeline import RunConfig

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


@pytest.fixture(scope="session")
def data_dir():
    return DATA_DIR


@pytest.fixture(scope="session")
def bbbp_dataset():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return load_csv(
            os.path.join(DATA_DIR, "bbbp_fixture.csv"),
            smiles_column="smiles",
            label_column="p_np",
            task="bbbp",
            kind="classification",
        )


@pytest.fixture(scope="session")
def esol_dataset():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return load_csv(
            os.path.join(DATA_DIR, "esol_fixture.csv"),
            smiles_column="smiles",
            label_column="measured log solubility in mols per litre",
            task="esol",
            kind="regression",
        )


def fixture_config(output_dir: str) -> RunConfig:
    """The committed replay run config with paths resolved and the
    output directory pointed at a scratch location."""
    with open(os.path.join(DATA_DIR, "bbbp_config.json")) as fh:
        obj = json.load(fh)
    obj["dataset_path"] = os.path.join(DATA_DIR, "bbbp_fixture.csv")
    obj["transcript_path"] = os.path.join(DATA_DIR, "transcript_bbbp.jsonl")
    obj["annotations_path"] = os.path.join(DATA_DIR, "annotations_bbbp.csv")
    obj["output_dir"] = output_dir
    return RunConfig.from_obj(obj).validate()


@pytest.fixture()
def bbbp_config(tmp_path):
    return fixture_config(str(tmp_path / "runs"))
