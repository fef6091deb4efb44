#!/usr/bin/env python3
"""Generate the committed desk-scale fixture datasets.

Benchmark hosting is not reachable from the build environment, so the
fixtures are synthetic: a combinatorial scaffold x substituent library
of valid drug-like SMILES with labels drawn from a seeded ground-truth
model over computed descriptors. The permeability labels are built so
the known determinants (weight, lipophilicity, polar surface area,
H-bonding, carbonyls, rings) genuinely separate the classes; the
solubility values follow a logS-style linear model. A few deliberately
malformed rows exercise failure reporting while keeping the parse rate
above 99%.

Usage: python3 tools/make_fixture_datasets.py tests/data
"""

import csv
import os
import sys

import numpy as np

from molrules.descriptors import compute
from molrules.molgraph import parse_pattern, count_matches, parse_smiles

SCAFFOLDS = [
    "c1ccc({sub})cc1",
    "c1ccnc({sub})c1",
    "c1ccc2cc({sub})ccc2c1",
    "C1CCN({sub})CC1",
    "C1CCC({sub})CC1",
    "c1cc({sub})co1",
    "c1cc({sub})cs1",
    "c1cnc({sub})cn1",
    "O1CCN({sub})CC1",
    "c1ccc2c(c1)cc([nH]2){sub}",
    "c1ccc2ncc({sub})cc2c1",
    "C1CC({sub})C1",
    "c1cc2ccccc2n1{sub}",
    "c1ccc(-c2ccc({sub})cc2)cc1",
    "C1CCC({sub})CC1O",
]

# non-ring substituents share the template's scaffold key; ring-bearing
# ones each mint a new composite scaffold, giving the split many groups
SUBSTITUENTS = [
    "C", "CC", "C(C)C", "O", "OC", "N", "N(C)C",
    "C(=O)C", "C(=O)O", "C(=O)N", "C(=O)OC",
    "Cl", "F", "C#N", "[N+](=O)[O-]", "C(F)(F)F", "S", "CO", "CCN",
    "c9ccccc9", "c9ccncc9", "C9CC9", "c9ccco9", "C9CCCCC9", "c9cccs9",
]

EXTRA_SOLUBLES = [
    "CCO", "CC(C)O", "CCCO", "CCCCO", "OCCO", "CC(=O)C", "CC(=O)O",
    "CCOC(=O)C", "CCN", "CCCN", "NCCO", "CC(N)C(=O)O", "OCC(O)CO",
    "C1CCOC1", "CC#N", "CS(=O)C", "NC(=O)N", "CNC(=O)N", "CCCCCC",
    "CCCCCCCC", "CCCCCCCCCC", "CC(C)CC(C)(C)C", "C1CCCCC1", "CCCCCCl",
    "CCCCBr", "CCCCCO", "CCOCC", "COC(=O)c1ccccc1", "CC(=O)Nc1ccccc1",
    "Oc1ccc(Cl)cc1",
]

BAD_BBBP = [("C1CC", 1), ("CC(", 0)]
BAD_ESOL = [("c1ccc", -1.0)]


def descriptor_vector(smiles):
    mol = parse_smiles(smiles)
    carbonyl = count_matches(mol, parse_pattern("C=O"))
    return {
        "mw": compute(mol, "mw"),
        "clogp": compute(mol, "clogp"),
        "tpsa": compute(mol, "tpsa"),
        "hbd": compute(mol, "hbd"),
        "carbonyl": carbonyl,
        "rings": compute(mol, "ring_count"),
    }


def build_library():
    molecules = []
    for scaffold in SCAFFOLDS:
        for sub in SUBSTITUENTS:
            smiles = scaffold.format(sub=sub)
            try:
                parse_smiles(smiles)
            except Exception:
                continue
            molecules.append(smiles)
    seen = set()
    unique = []
    for s in molecules:
        if s not in seen:
            seen.add(s)
            unique.append(s)
    return unique


def make_bbbp(rows, rng):
    scores = []
    for smiles in rows:
        d = descriptor_vector(smiles)
        scores.append(
            0.45 * (d["clogp"] - 1.5)
            - 0.030 * (d["mw"] - 230.0)
            - 0.040 * (d["tpsa"] - 45.0)
            - 0.40 * d["hbd"]
            - 1.1 * d["carbonyl"]
            - 0.30 * (d["rings"] - 1.5)
            + rng.normal(0.0, 0.65)
        )
    threshold = float(np.median(scores))
    return [(smiles, 1 if s > threshold else 0) for smiles, s in zip(rows, scores)]


def make_esol(rows, rng):
    records = []
    for smiles in rows:
        d = descriptor_vector(smiles)
        logs = 0.9 - 1.02 * d["clogp"] - 0.0045 * (d["mw"] - 150.0) + rng.normal(0.0, 0.35)
        records.append((smiles, round(logs, 3)))
    return records


def main(out_dir):
    rng = np.random.Generator(np.random.Philox(key=np.array([20240811, 1], dtype=np.uint64)))
    library = build_library()
    assert len(library) >= 298, f"library too small: {len(library)}"

    bbbp_rows = make_bbbp(library[:298], rng)
    pos = sum(label for _, label in bbbp_rows)
    assert 0.30 <= pos / len(bbbp_rows) <= 0.70, f"unbalanced: {pos}/{len(bbbp_rows)}"

    esol_pool = EXTRA_SOLUBLES + library[100:329]
    esol_rows = make_esol(esol_pool[:259], rng)

    os.makedirs(out_dir, exist_ok=True)
    bbbp_path = os.path.join(out_dir, "bbbp_fixture.csv")
    with open(bbbp_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["smiles", "p_np"])
        for smiles, label in bbbp_rows:
            writer.writerow([smiles, label])
        for smiles, label in BAD_BBBP:
            writer.writerow([smiles, label])

    esol_path = os.path.join(out_dir, "esol_fixture.csv")
    with open(esol_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["smiles", "measured log solubility in mols per litre"])
        for smiles, value in esol_rows:
            writer.writerow([smiles, value])
        for smiles, value in BAD_ESOL:
            writer.writerow([smiles, value])

    total = len(bbbp_rows) + len(esol_rows)
    bad = len(BAD_BBBP) + len(BAD_ESOL)
    print(f"bbbp: {len(bbbp_rows)}+{len(BAD_BBBP)} rows ({pos} positive)")
    print(f"esol: {len(esol_rows)}+{len(BAD_ESOL)} rows")
    print(f"parse rate: {total}/{total + bad} = {total / (total + bad):.4f}")

    # the fixture must carry the class signal the validation phase pins
    from molrules.stats import mann_whitney_u

    for name, column in (("mw", "mw"), ("carbonyl", "carbonyl")):
        values = np.array([descriptor_vector(s)[column] for s, _ in bbbp_rows])
        labels = np.array([label for _, label in bbbp_rows])
        result = mann_whitney_u(values[labels == 1], values[labels == 0])
        print(f"bbbp {name} MWU p = {result.p_value:.3g}")
        assert result.p_value < 0.01, f"{name} not separated (p={result.p_value})"


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data")
