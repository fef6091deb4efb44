"""Graph types for molecules and substructure patterns.

Everything here is immutable after construction; parsing and all graph
algorithms live in sibling modules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

SINGLE = "single"
DOUBLE = "double"
TRIPLE = "triple"
AROMATIC = "aromatic"

# Valence units contributed by one bond of each order. Aromatic bonds count
# 1.5 and the per-atom sum is rounded up before the valence table lookup.
BOND_VALENCE = {SINGLE: 1.0, DOUBLE: 2.0, TRIPLE: 3.0, AROMATIC: 1.5}


@dataclass(frozen=True)
class Atom:
    element: str
    index: int
    aromatic: bool = False
    formal_charge: int = 0
    explicit_h: int | None = None  # bracket H count; None for organic-subset atoms
    isotope: int | None = None
    implicit_h: int = 0

    @property
    def total_h(self) -> int:
        """Hydrogens attached via the bracket spec or implied by valence.

        Explicit neighbouring H atoms are counted at the molecule level
        (see :meth:`Molecule.total_h`), not here.
        """
        return (self.explicit_h or 0) + self.implicit_h


@dataclass(frozen=True)
class Bond:
    a1: int
    a2: int
    order: str = SINGLE

    def __post_init__(self):
        if self.a1 == self.a2:
            raise ValueError("bond endpoints must be distinct")
        if self.a1 > self.a2:
            low, high = self.a2, self.a1
            object.__setattr__(self, "a1", low)
            object.__setattr__(self, "a2", high)

    @property
    def key(self) -> tuple[int, int]:
        return (self.a1, self.a2)

    def other(self, idx: int) -> int:
        return self.a2 if idx == self.a1 else self.a1


@dataclass(frozen=True)
class Molecule:
    atoms: tuple[Atom, ...]
    bonds: tuple[Bond, ...]
    rings: tuple[tuple[int, ...], ...] = ()
    source: str = ""

    def __len__(self):
        return len(self.atoms)

    @cached_property
    def _adjacency(self) -> tuple[tuple[tuple[int, Bond], ...], ...]:
        adj: list[list[tuple[int, Bond]]] = [[] for _ in self.atoms]
        for bond in self.bonds:
            adj[bond.a1].append((bond.a2, bond))
            adj[bond.a2].append((bond.a1, bond))
        return tuple(tuple(n) for n in adj)

    def neighbors(self, idx: int) -> tuple[tuple[int, Bond], ...]:
        return self._adjacency[idx]

    @cached_property
    def _bond_lookup(self) -> dict[tuple[int, int], Bond]:
        return {b.key: b for b in self.bonds}

    def bond_between(self, i: int, j: int) -> Bond | None:
        return self._bond_lookup.get((min(i, j), max(i, j)))

    def degree(self, idx: int) -> int:
        return len(self._adjacency[idx])

    def heavy_degree(self, idx: int) -> int:
        return sum(1 for n, _ in self._adjacency[idx] if self.atoms[n].element != "H")

    def total_h(self, idx: int) -> int:
        """Total hydrogen count: implicit + bracket + explicit H neighbours."""
        attached = sum(1 for n, _ in self._adjacency[idx] if self.atoms[n].element == "H")
        return self.atoms[idx].total_h + attached

    @cached_property
    def _ring_atoms(self) -> frozenset[int]:
        return frozenset(i for ring in self.rings for i in ring)

    @cached_property
    def _ring_edges(self) -> frozenset[tuple[int, int]]:
        edges = set()
        for ring in self.rings:
            for k in range(len(ring)):
                i, j = ring[k], ring[(k + 1) % len(ring)]
                edges.add((min(i, j), max(i, j)))
        return frozenset(edges)

    def in_ring(self, idx: int) -> bool:
        return idx in self._ring_atoms

    def bond_in_ring(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self._ring_edges

    def smallest_ring_size(self, idx: int) -> int | None:
        sizes = [len(r) for r in self.rings if idx in r]
        return min(sizes) if sizes else None

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * len(self.atoms)
        out = []
        for start in range(len(self.atoms)):
            if seen[start]:
                continue
            stack, comp = [start], []
            seen[start] = True
            while stack:
                i = stack.pop()
                comp.append(i)
                for n, _ in self._adjacency[i]:
                    if not seen[n]:
                        seen[n] = True
                        stack.append(n)
            out.append(tuple(sorted(comp)))
        return tuple(out)

    def heavy_atom_count(self) -> int:
        return sum(1 for a in self.atoms if a.element != "H")


@dataclass(frozen=True)
class PatternAtom:
    """Constraint on one matched atom; ``None`` fields match anything."""

    element: str | None = None
    aromatic: bool | None = None
    charge: int | None = None
    total_h: int | None = None


# Pattern bond order: SINGLE/DOUBLE/TRIPLE/AROMATIC for an explicit symbol,
# ANY_ORDER for "~", or None for an unwritten bond (matches single or
# aromatic, as in SMARTS).
ANY_ORDER = "any"


@dataclass(frozen=True)
class PatternBond:
    a1: int
    a2: int
    order: str | None = None


@dataclass(frozen=True)
class Pattern:
    atoms: tuple[PatternAtom, ...]
    bonds: tuple[PatternBond, ...]
    source: str = ""

    def __len__(self):
        return len(self.atoms)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, PatternBond], ...], ...]:
        adj: list[list[tuple[int, PatternBond]]] = [[] for _ in self.atoms]
        for bond in self.bonds:
            adj[bond.a1].append((bond.a2, bond))
            adj[bond.a2].append((bond.a1, bond))
        return tuple(tuple(n) for n in adj)
