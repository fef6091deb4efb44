"""Benchmark CSV ingestion.

Rows with unparseable SMILES are retained with their error (position
included) and excluded from modeling; blank label cells mark the label
absent for that subtask, as in multitask panel files. Ingestion is
lossless: every input row lands in the records or the failure report.
"""

from __future__ import annotations

import csv
import hashlib
import json
import os
import warnings
from dataclasses import asdict, dataclass
from importlib import resources

from ..errors import DataError, SmilesParseError
from ..molgraph import Molecule, parse_smiles

CLASSIFICATION = "classification"
REGRESSION = "regression"


@dataclass(frozen=True)
class Record:
    row_id: int
    smiles: str
    molecule: Molecule | None
    label: float | None
    error: str | None = None

    @property
    def modelable(self) -> bool:
        return self.molecule is not None and self.label is not None


@dataclass(frozen=True)
class IngestionReport:
    path: str
    total_rows: int
    parsed: int
    failures: tuple[tuple[int, str], ...]
    missing_labels: int
    declared_count: int | None
    count_mismatch: bool

    def to_json(self) -> str:
        obj = asdict(self)
        obj["failures"] = [list(f) for f in self.failures]
        return json.dumps(obj, indent=2)


@dataclass(frozen=True)
class Dataset:
    task: str
    kind: str
    records: tuple[Record, ...]
    source_path: str
    checksum: str
    report: IngestionReport

    def modelable_records(self) -> tuple[Record, ...]:
        return tuple(r for r in self.records if r.modelable)

    def record_by_id(self, row_id: int) -> Record:
        return self.records[row_id]

    def __len__(self):
        return len(self.records)


def _load_manifest() -> dict[str, int]:
    out = {}
    text = resources.files(__package__).joinpath("data/manifest.txt").read_text()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, count = line.split()
        out[name] = int(count)
    return out


MANIFEST = _load_manifest()


def _parse_label(cell: str, kind: str, row_id: int):
    text = (cell or "").strip()
    if not text:
        return None
    try:
        value = float(text)
    except ValueError:
        raise DataError(f"row {row_id}: label {text!r} is not numeric") from None
    if kind == CLASSIFICATION and value not in (0.0, 1.0):
        raise DataError(f"row {row_id}: classification label must be 0/1, got {text!r}")
    return value


def _manifest_key(task: str) -> str:
    return task.split("-")[0]


def load_table(path, smiles_column: str, label_columns: list[str], kinds: dict[str, str]):
    """Shared reader: parse molecules once, labels per requested column."""
    if not os.path.exists(path):
        raise DataError(f"dataset file not found: {path}")
    with open(path, newline="") as fh:
        digest = hashlib.sha256(open(path, "rb").read()).hexdigest()
        reader = csv.DictReader(fh)
        columns = reader.fieldnames or []
        missing = [c for c in [smiles_column, *label_columns] if c not in columns]
        if missing:
            raise DataError(f"{path}: missing columns {missing}; found {columns}")
        rows = list(reader)
    if not rows:
        raise DataError(f"{path}: no data rows")

    molecules: list[tuple[Molecule | None, str | None]] = []
    for row_id, row in enumerate(rows):
        smiles = (row[smiles_column] or "").strip()
        try:
            molecules.append((parse_smiles(smiles), None))
        except SmilesParseError as exc:
            molecules.append((None, str(exc)))

    per_column: dict[str, list[Record]] = {c: [] for c in label_columns}
    for row_id, row in enumerate(rows):
        mol, error = molecules[row_id]
        for column in label_columns:
            label = _parse_label(row[column], kinds[column], row_id)
            per_column[column].append(
                Record(
                    row_id=row_id,
                    smiles=(row[smiles_column] or "").strip(),
                    molecule=mol,
                    label=label,
                    error=error,
                )
            )
    return per_column, digest


def _build_dataset(task: str, kind: str, records: list[Record], path, checksum: str) -> Dataset:
    parsed = sum(1 for r in records if r.molecule is not None)
    if parsed == 0:
        raise DataError(f"{path}: zero parseable rows")
    failures = tuple((r.row_id, r.error) for r in records if r.error)
    missing = sum(1 for r in records if r.molecule is not None and r.label is None)
    declared = MANIFEST.get(_manifest_key(task))
    mismatch = declared is not None and declared != len(records)
    if mismatch:
        warnings.warn(
            f"{task}: observed {len(records)} rows, manifest declares {declared}",
            stacklevel=3,
        )
    report = IngestionReport(
        path=str(path),
        total_rows=len(records),
        parsed=parsed,
        failures=failures,
        missing_labels=missing,
        declared_count=declared,
        count_mismatch=mismatch,
    )
    return Dataset(
        task=task,
        kind=kind,
        records=tuple(records),
        source_path=str(path),
        checksum=checksum,
        report=report,
    )


def load_csv(path, smiles_column: str, label_column: str, task: str, kind: str) -> Dataset:
    """Single-task CSV -> Dataset."""
    if kind not in (CLASSIFICATION, REGRESSION):
        raise DataError(f"unknown task kind {kind!r}")
    per_column, digest = load_table(path, smiles_column, [label_column], {label_column: kind})
    return _build_dataset(task, kind, per_column[label_column], path, digest)


def load_multitask_csv(path, smiles_column: str, label_columns: list[str], task_prefix: str, kind: str):
    """Multitask panel CSV -> one Dataset per label column, sharing the
    parsed molecules."""
    per_column, digest = load_table(
        path, smiles_column, label_columns, {c: kind for c in label_columns}
    )
    out = {}
    for column in label_columns:
        slug = column.strip().lower().replace(" ", "-")
        out[column] = _build_dataset(f"{task_prefix}-{slug}", kind, per_column[column], path, digest)
    return out
