"""Dataset ingestion, splits, and batch sampling."""

from .loader import (
    CLASSIFICATION,
    MANIFEST,
    REGRESSION,
    Dataset,
    IngestionReport,
    Record,
    load_csv,
    load_multitask_csv,
)
from .sampling import sample_batches
from .splits import RANDOM, SCAFFOLD, Split, random_split, scaffold_key, scaffold_split

__all__ = [
    "CLASSIFICATION",
    "Dataset",
    "IngestionReport",
    "MANIFEST",
    "RANDOM",
    "REGRESSION",
    "Record",
    "SCAFFOLD",
    "Split",
    "load_csv",
    "load_multitask_csv",
    "random_split",
    "sample_batches",
    "scaffold_key",
    "scaffold_split",
]
