"""Named molecular descriptors used by rule expressions.

The registry is assembled once at import time and is immutable after
that; every descriptor is a pure function of the molecular graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..errors import UnknownDescriptorError
from ..molgraph.elements import ATOMIC_MASSES, HALOGENS
from ..molgraph.model import DOUBLE, SINGLE, Molecule
from .contributions import load_table

_H_MASS = ATOMIC_MASSES["H"]


@dataclass(frozen=True)
class DescriptorId:
    name: str
    units: str
    value_kind: str  # "integer" | "real"


def molecular_weight(mol: Molecule) -> float:
    total = 0.0
    for atom in mol.atoms:
        total += ATOMIC_MASSES[atom.element]
        total += atom.total_h * _H_MASS
    return total


def heavy_atom_count(mol: Molecule) -> float:
    return float(mol.heavy_atom_count())


def hydrogen_bond_donors(mol: Molecule) -> float:
    """N or O atoms bearing at least one hydrogen (Lipinski convention)."""
    return float(
        sum(
            1
            for a in mol.atoms
            if a.element in ("N", "O") and mol.total_h(a.index) >= 1
        )
    )


def hydrogen_bond_acceptors(mol: Molecule) -> float:
    """All N and O atoms (Lipinski convention)."""
    return float(sum(1 for a in mol.atoms if a.element in ("N", "O")))


def _is_amide_bond(mol: Molecule, i: int, j: int) -> bool:
    for c, n in ((i, j), (j, i)):
        if mol.atoms[c].element == "C" and mol.atoms[n].element == "N":
            for nbr, b in mol.neighbors(c):
                if b.order == DOUBLE and mol.atoms[nbr].element == "O":
                    return True
    return False


def rotatable_bonds(mol: Molecule) -> float:
    """Non-ring single bonds between heavy atoms of heavy-degree >= 2,
    amide C-N excluded."""
    count = 0
    for bond in mol.bonds:
        if bond.order != SINGLE or mol.bond_in_ring(bond.a1, bond.a2):
            continue
        if mol.atoms[bond.a1].element == "H" or mol.atoms[bond.a2].element == "H":
            continue
        if mol.heavy_degree(bond.a1) < 2 or mol.heavy_degree(bond.a2) < 2:
            continue
        if _is_amide_bond(mol, bond.a1, bond.a2):
            continue
        count += 1
    return float(count)


def ring_count(mol: Molecule) -> float:
    return float(len(mol.rings))


def aromatic_ring_count(mol: Molecule) -> float:
    return float(
        sum(1 for ring in mol.rings if all(mol.atoms[i].aromatic for i in ring))
    )


def halogen_count(mol: Molecule) -> float:
    return float(sum(1 for a in mol.atoms if a.element in HALOGENS))


def formal_charge_total(mol: Molecule) -> float:
    return float(sum(a.formal_charge for a in mol.atoms))


def max_ring_size(mol: Molecule) -> float:
    return float(max((len(r) for r in mol.rings), default=0))


_TPSA_TABLE = load_table("tpsa.txt")
_CLOGP_TABLE = load_table("clogp.txt")


def tpsa(mol: Molecule, on_uncovered: str = "zero") -> float:
    return _TPSA_TABLE.evaluate(mol, on_uncovered)


def clogp(mol: Molecule, on_uncovered: str = "zero") -> float:
    return _CLOGP_TABLE.evaluate(mol, on_uncovered)


_REGISTRY: dict[str, tuple[DescriptorId, Callable[..., float]]] = {}


def _register(name: str, units: str, value_kind: str, func: Callable[..., float]):
    if name in _REGISTRY:
        raise ValueError(f"duplicate descriptor name {name!r}")
    _REGISTRY[name] = (DescriptorId(name, units, value_kind), func)


_register("mw", "g/mol", "real", molecular_weight)
_register("heavy_atom_count", "count", "integer", heavy_atom_count)
_register("hbd", "count", "integer", hydrogen_bond_donors)
_register("hba", "count", "integer", hydrogen_bond_acceptors)
_register("tpsa", "angstrom^2", "real", tpsa)
_register("clogp", "log-units", "real", clogp)
_register("rotatable_bonds", "count", "integer", rotatable_bonds)
_register("ring_count", "count", "integer", ring_count)
_register("aromatic_ring_count", "count", "integer", aromatic_ring_count)
_register("halogen_count", "count", "integer", halogen_count)
_register("formal_charge_total", "elementary charge", "integer", formal_charge_total)
_register("max_ring_size", "count", "integer", max_ring_size)


def list_descriptors() -> list[DescriptorId]:
    """Registered descriptors in stable (registration) order."""
    return [identity for identity, _ in _REGISTRY.values()]


def is_registered(name: str) -> bool:
    return name in _REGISTRY


def compute(mol: Molecule, name: str, on_uncovered: str = "zero") -> float:
    """Evaluate one named descriptor on a molecule."""
    try:
        _, func = _REGISTRY[name]
    except KeyError:
        raise UnknownDescriptorError(
            f"unknown descriptor {name!r}; known: {sorted(_REGISTRY)}"
        ) from None
    if name in ("tpsa", "clogp"):
        return func(mol, on_uncovered)
    return func(mol)
