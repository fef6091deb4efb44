"""Canonical graph keys via iterative refinement with backtracking.

The key is a serialization of the molecule under a canonical atom
labeling: identical for isomorphic graphs (same elements, charges,
aromaticity, bond orders) regardless of input atom order. It is not a
SMILES string.
"""

from __future__ import annotations

from .model import AROMATIC, DOUBLE, SINGLE, TRIPLE, Molecule

_ORDER_RANK = {SINGLE: 0, DOUBLE: 1, TRIPLE: 2, AROMATIC: 3}
_ORDER_CHAR = {SINGLE: "-", DOUBLE: "=", TRIPLE: "#", AROMATIC: ":"}


def _initial_colors(mol: Molecule) -> list[int]:
    invariants = []
    for atom in mol.atoms:
        invariants.append(
            (
                atom.element,
                atom.aromatic,
                atom.formal_charge,
                mol.total_h(atom.index),
                mol.degree(atom.index),
                atom.isotope or 0,
            )
        )
    ranks = {inv: r for r, inv in enumerate(sorted(set(invariants)))}
    return [ranks[inv] for inv in invariants]


def _refine(mol: Molecule, colors: list[int]) -> list[int]:
    n = len(colors)
    while True:
        signatures = []
        for i in range(n):
            nbr = tuple(
                sorted((_ORDER_RANK[b.order], colors[j]) for j, b in mol.neighbors(i))
            )
            signatures.append((colors[i], nbr))
        ranks = {sig: r for r, sig in enumerate(sorted(set(signatures)))}
        new_colors = [ranks[sig] for sig in signatures]
        if new_colors == colors:
            return colors
        colors = new_colors


def _serialize(mol: Molecule, colors: list[int]) -> str:
    position = {atom: color for atom, color in enumerate(colors)}
    atoms_by_color = sorted(range(len(colors)), key=lambda a: position[a])
    atom_parts = []
    for a in atoms_by_color:
        atom = mol.atoms[a]
        part = atom.element
        if atom.aromatic:
            part += "a"
        if atom.formal_charge:
            part += f"{atom.formal_charge:+d}"
        part += f"H{mol.total_h(a)}"
        if atom.isotope:
            part += f"*{atom.isotope}"
        atom_parts.append(part)
    bond_parts = sorted(
        (
            min(position[b.a1], position[b.a2]),
            max(position[b.a1], position[b.a2]),
            _ORDER_CHAR[b.order],
        )
        for b in mol.bonds
    )
    bonds_text = ",".join(f"{i}{c}{j}" for i, j, c in bond_parts)
    return ";".join(atom_parts) + "|" + bonds_text


def canonical_key(mol: Molecule) -> str:
    """Canonical key, invariant under atom-index permutation."""
    n = len(mol.atoms)
    if n == 0:
        return ""

    best: list[str | None] = [None]

    def search(colors: list[int]):
        classes: dict[int, list[int]] = {}
        for atom, color in enumerate(colors):
            classes.setdefault(color, []).append(atom)
        ambiguous = sorted(
            (color for color, members in classes.items() if len(members) > 1)
        )
        if not ambiguous:
            key = _serialize(mol, colors)
            if best[0] is None or key < best[0]:
                best[0] = key
            return
        # individualize each member of the first ambiguous cell in turn,
        # keeping the lexicographically smallest full labeling
        target = ambiguous[0]
        for atom in classes[target]:
            branched = [(c, 1 if i == atom else 2) for i, c in enumerate(colors)]
            ranks = {sig: r for r, sig in enumerate(sorted(set(branched)))}
            search(_refine(mol, [ranks[sig] for sig in branched]))

    search(_refine(mol, _initial_colors(mol)))
    return best[0] or ""
