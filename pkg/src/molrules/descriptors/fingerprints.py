"""Circular-environment fingerprints (radius 2, hashed and folded).

Atom identifiers start from order-invariant local invariants and are
iteratively rehashed with the sorted (bond order, neighbour identifier)
tuples, so the final bitvector does not depend on input atom order. The
mixer is a fixed 64-bit finalizer; no process-randomized hashing.
"""

from __future__ import annotations

import numpy as np

from ..molgraph.model import AROMATIC, DOUBLE, SINGLE, TRIPLE, Molecule

_MASK = (1 << 64) - 1
_ORDER_CODE = {SINGLE: 1, DOUBLE: 2, TRIPLE: 3, AROMATIC: 4}


def _mix(h: int, value: int) -> int:
    # splitmix64 finalizer step
    h = (h + 0x9E3779B97F4A7C15 + value) & _MASK
    h = ((h ^ (h >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    h = ((h ^ (h >> 27)) * 0x94D049BB133111EB) & _MASK
    return h ^ (h >> 31)


def _hash_ints(values) -> int:
    h = 0x243F6A8885A308D3
    for v in values:
        h = _mix(h, v)
    return h


def _element_code(symbol: str) -> int:
    return _hash_ints(ord(c) for c in symbol)


def ecfp4(mol: Molecule, n_bits: int = 2048) -> np.ndarray:
    """Radius-2 circular fingerprint folded into ``n_bits`` (power of two)."""
    if n_bits <= 0 or n_bits & (n_bits - 1):
        raise ValueError(f"n_bits must be a positive power of two, got {n_bits}")

    heavy = [i for i, a in enumerate(mol.atoms) if a.element != "H"]
    ids: dict[int, int] = {}
    for i in heavy:
        atom = mol.atoms[i]
        ids[i] = _hash_ints(
            (
                _element_code(atom.element),
                atom.formal_charge + 16,
                mol.total_h(i),
                mol.heavy_degree(i),
                int(atom.aromatic),
                int(mol.in_ring(i)),
            )
        )

    identifiers = set(ids.values())
    for _ in range(2):  # radius 1 and 2
        new_ids: dict[int, int] = {}
        for i in heavy:
            neighbourhood = sorted(
                (_ORDER_CODE[b.order], ids[n])
                for n, b in mol.neighbors(i)
                if mol.atoms[n].element != "H"
            )
            flat = [ids[i]]
            for code, nid in neighbourhood:
                flat.extend((code, nid))
            new_ids[i] = _hash_ints(flat)
        ids = new_ids
        identifiers.update(ids.values())

    vector = np.zeros(n_bits, dtype=np.uint8)
    for identifier in identifiers:
        vector[identifier % n_bits] = 1
    return vector


def tanimoto(a: np.ndarray, b: np.ndarray) -> float:
    a_on = a.astype(bool)
    b_on = b.astype(bool)
    union = int(np.sum(a_on | b_on))
    if union == 0:
        return 1.0
    return int(np.sum(a_on & b_on)) / union
