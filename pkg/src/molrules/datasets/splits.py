"""Train/valid/test splits: deterministic scaffold grouping or seeded
random shuffling. Both cover exactly the modelable rows."""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..errors import DataError
from ..learners.rng import substream
from ..molgraph import canonical_key, murcko_scaffold
from .loader import Dataset

SCAFFOLD = "scaffold"
RANDOM = "random"

_MIN_ROWS = 10


@dataclass(frozen=True)
class Split:
    train: tuple[int, ...]
    valid: tuple[int, ...]
    test: tuple[int, ...]
    method: str
    fractions: tuple[float, float, float]
    seed: int | None = None

    def partition(self, name: str) -> tuple[int, ...]:
        return {"train": self.train, "valid": self.valid, "test": self.test}[name]

    def to_json(self) -> str:
        return json.dumps(
            {
                "method": self.method,
                "fractions": list(self.fractions),
                "seed": self.seed,
                "train": list(self.train),
                "valid": list(self.valid),
                "test": list(self.test),
            },
            indent=2,
        )

    @staticmethod
    def from_json(text: str) -> "Split":
        obj = json.loads(text)
        return Split(
            train=tuple(obj["train"]),
            valid=tuple(obj["valid"]),
            test=tuple(obj["test"]),
            method=obj["method"],
            fractions=tuple(obj["fractions"]),
            seed=obj.get("seed"),
        )


def _check_fractions(fractions):
    fractions = tuple(float(f) for f in fractions)
    if len(fractions) != 3 or any(f < 0 for f in fractions):
        raise DataError(f"fractions must be three non-negative numbers, got {fractions}")
    if abs(sum(fractions) - 1.0) > 1e-9:
        raise DataError(f"fractions must sum to 1, got {fractions}")
    return fractions


def _modelable_ids(ds: Dataset):
    ids = [r.row_id for r in ds.records if r.modelable]
    if len(ids) < _MIN_ROWS:
        raise DataError(f"need at least {_MIN_ROWS} modelable rows, have {len(ids)}")
    return ids


def scaffold_key(ds: Dataset, row_id: int) -> str:
    mol = ds.records[row_id].molecule
    return canonical_key(murcko_scaffold(mol))


def scaffold_split(ds: Dataset, fractions=(0.8, 0.1, 0.1)) -> Split:
    """Group rows by scaffold key, then fill train, valid, test in order
    of descending group size (ties by key). No key spans partitions;
    a pure function of the dataset content."""
    fractions = _check_fractions(fractions)
    ids = _modelable_ids(ds)

    groups: dict[str, list[int]] = {}
    for row_id in ids:
        groups.setdefault(scaffold_key(ds, row_id), []).append(row_id)
    ordered = sorted(groups.items(), key=lambda kv: (-len(kv[1]), kv[0]))

    n = len(ids)
    train_target = fractions[0] * n
    valid_target = fractions[1] * n
    train: list[int] = []
    valid: list[int] = []
    test: list[int] = []
    for _, members in ordered:
        if len(train) < train_target:
            train.extend(members)
        elif len(valid) < valid_target:
            valid.extend(members)
        else:
            test.extend(members)
    return Split(
        train=tuple(train),
        valid=tuple(valid),
        test=tuple(test),
        method=SCAFFOLD,
        fractions=fractions,
    )


def random_split(ds: Dataset, fractions=(0.8, 0.1, 0.1), seed: int = 0) -> Split:
    fractions = _check_fractions(fractions)
    ids = _modelable_ids(ds)
    rng = substream(seed, 0)
    shuffled = [ids[i] for i in rng.permutation(len(ids))]
    n = len(ids)
    cut1 = round(fractions[0] * n)
    cut2 = round((fractions[0] + fractions[1]) * n)
    return Split(
        train=tuple(shuffled[:cut1]),
        valid=tuple(shuffled[cut1:cut2]),
        test=tuple(shuffled[cut2:]),
        method=RANDOM,
        fractions=fractions,
        seed=seed,
    )
