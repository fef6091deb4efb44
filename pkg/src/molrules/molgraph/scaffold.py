"""Ring-system scaffold extraction (rings plus inter-ring linkers)."""

from __future__ import annotations

from .model import Molecule
from .smiles import AtomSpec, build_molecule

EMPTY_SCAFFOLD = Molecule(atoms=(), bonds=(), rings=(), source="")


def murcko_scaffold(mol: Molecule) -> Molecule:
    """Induced subgraph on ring atoms and atoms on paths between rings.

    Computed by iteratively deleting terminal (degree <= 1) non-ring
    atoms; acyclic molecules collapse to the empty scaffold. Implicit
    hydrogens are reassigned on the result so that, e.g., toluene and
    benzene share one scaffold. Idempotent.
    """
    if not mol.rings:
        return EMPTY_SCAFFOLD

    keep = set(range(len(mol.atoms)))
    changed = True
    while changed:
        changed = False
        for i in sorted(keep):
            if mol.in_ring(i):
                continue
            degree = sum(1 for n, _ in mol.neighbors(i) if n in keep)
            if degree <= 1:
                keep.remove(i)
                changed = True

    index_map = {old: new for new, old in enumerate(sorted(keep))}
    specs = []
    for old in sorted(keep):
        atom = mol.atoms[old]
        specs.append(
            AtomSpec(
                element=atom.element,
                aromatic=atom.aromatic,
                charge=atom.formal_charge,
                explicit_h=atom.explicit_h,
                isotope=atom.isotope,
            )
        )
    bonds = [
        (index_map[b.a1], index_map[b.a2], b.order)
        for b in mol.bonds
        if b.a1 in keep and b.a2 in keep
    ]
    return build_molecule(specs, bonds, source=f"scaffold({mol.source})")
