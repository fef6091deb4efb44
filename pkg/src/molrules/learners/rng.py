"""Counter-based random streams.

Each consumer derives an independent substream from (seed, stream
index) via a Philox key, so trees can be fitted in any order or in
parallel and still reproduce the sequential result bit for bit.
"""

from __future__ import annotations

import numpy as np


def substream(seed: int, index: int) -> np.random.Generator:
    key = np.array([np.uint64(seed & (2**64 - 1)), np.uint64(index)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
