"""Labeled batch sampling for inference prompts."""

from __future__ import annotations

import numpy as np

from ..errors import DataError
from ..learners.rng import substream
from .loader import CLASSIFICATION, Dataset, Record


def sample_batches(
    ds: Dataset,
    partition_ids,
    batch_size: int,
    n_batches: int,
    seed: int = 0,
) -> list[list[Record]]:
    """Draw ``n_batches`` batches from the partition, each sampled
    without replacement; classification batches are label-balanced when
    the partition allows it. Deterministic per seed."""
    pool = [ds.records[i] for i in partition_ids if ds.records[i].modelable]
    if not pool:
        raise DataError("partition has no modelable rows")
    if batch_size > len(pool):
        raise DataError(f"batch_size {batch_size} exceeds partition size {len(pool)}")

    batches: list[list[Record]] = []
    for b in range(n_batches):
        rng = substream(seed, b)
        if ds.kind == CLASSIFICATION:
            batches.append(_balanced_batch(pool, batch_size, rng))
        else:
            chosen = rng.choice(len(pool), size=batch_size, replace=False)
            batches.append([pool[i] for i in sorted(chosen)])
    return batches


def _balanced_batch(pool: list[Record], batch_size: int, rng: np.random.Generator) -> list[Record]:
    positives = [r for r in pool if r.label == 1]
    negatives = [r for r in pool if r.label == 0]
    want_pos = min(batch_size // 2 + batch_size % 2, len(positives))
    want_neg = min(batch_size - want_pos, len(negatives))
    want_pos = min(batch_size - want_neg, len(positives))  # backfill if negatives ran short
    chosen: list[Record] = []
    if want_pos:
        idx = rng.choice(len(positives), size=want_pos, replace=False)
        chosen.extend(positives[i] for i in sorted(idx))
    if want_neg:
        idx = rng.choice(len(negatives), size=want_neg, replace=False)
        chosen.extend(negatives[i] for i in sorted(idx))
    chosen.sort(key=lambda r: r.row_id)
    return chosen
