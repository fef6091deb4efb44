"""Atom-environment contribution tables.

A table is a versioned text file of ``label | predicate | value``
records, matched first-to-last against each atom's local environment.
Predicates are conjunctions of ``key=value`` tests over: element,
aromaticity, charge, total hydrogen count (``h`` supports ``>=``/``<=``),
heavy degree (``deg``), heteroatom-neighbour count (``het``), the exact
multiset of heavy-neighbour bond orders (``bonds``, with ``a`` for
aromatic), neighbour element via any bond (``nbr``), via a single bond
(``snbr``), via a double bond (``dbl``, ``*`` for any), ring membership
(``ring``, ``ring3``), and ``acidic`` (an O single-bonded to a carbon
that carries a double-bonded O).

Files may carry a ``[hydrogens]`` section whose predicates are tested
against the carrier heavy atom; each attached hydrogen then adds that
entry's value. The ``#covers:`` header lists elements the table claims;
atoms of covered elements matching no entry are *uncovered* and follow
the caller's policy (contribute zero with a warning, or raise).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from importlib import resources

from ..errors import UncoveredEnvironmentError
from ..molgraph.model import AROMATIC, DOUBLE, SINGLE, TRIPLE, Molecule

_ORDER_CODE = {SINGLE: "1", DOUBLE: "2", TRIPLE: "3", AROMATIC: "a"}


class UncoveredEnvironmentWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Entry:
    label: str
    tests: tuple[tuple[str, str, str], ...]  # (key, op, value)
    value: float


@dataclass(frozen=True)
class ContributionTable:
    name: str
    covers: frozenset[str]
    atom_entries: tuple[Entry, ...]
    hydrogen_entries: tuple[Entry, ...]
    others: str = "zero"  # elements outside `covers`: "zero" | "uncovered"

    def evaluate(self, mol: Molecule, on_uncovered: str = "zero") -> float:
        """Sum contributions over all atoms (plus hydrogens if present)."""
        if on_uncovered not in ("zero", "error"):
            raise ValueError(f"unknown coverage policy {on_uncovered!r}")
        total = 0.0
        uncovered = []
        for idx, atom in enumerate(mol.atoms):
            if atom.element == "H":
                continue  # hydrogens are charged to their carrier
            if atom.element not in self.covers:
                if self.others == "uncovered":
                    uncovered.append(f"{atom.element}@{idx}")
                continue
            env = _Environment(mol, idx)
            entry = _first_match(self.atom_entries, env)
            if entry is not None:
                total += entry.value
            else:
                uncovered.append(f"{atom.element}@{idx}")
            if self.hydrogen_entries:
                h_entry = _first_match(self.hydrogen_entries, env)
                if h_entry is not None:
                    total += mol.total_h(idx) * h_entry.value
        if uncovered:
            detail = f"{self.name}: no entry for atom environment(s) {', '.join(uncovered)}"
            if on_uncovered == "error":
                raise UncoveredEnvironmentError(detail)
            warnings.warn(detail, UncoveredEnvironmentWarning, stacklevel=3)
        return total


class _Environment:
    """Lazy per-atom view the predicate keys are answered from."""

    def __init__(self, mol: Molecule, idx: int):
        self.mol = mol
        self.idx = idx
        self.atom = mol.atoms[idx]

    def key(self, name: str) -> str:
        mol, idx, atom = self.mol, self.idx, self.atom
        if name == "elem":
            return atom.element
        if name == "arom":
            return "1" if atom.aromatic else "0"
        if name == "charge":
            return str(atom.formal_charge)
        if name == "h":
            return str(mol.total_h(idx))
        if name == "deg":
            return str(mol.heavy_degree(idx))
        if name == "het":
            return str(
                sum(
                    1
                    for n, _ in mol.neighbors(idx)
                    if mol.atoms[n].element not in ("C", "H")
                )
            )
        if name == "bonds":
            codes = sorted(
                _ORDER_CODE[b.order]
                for n, b in mol.neighbors(idx)
                if mol.atoms[n].element != "H"
            )
            return ",".join(codes)
        if name == "ring":
            return "1" if mol.in_ring(idx) else "0"
        if name == "ring3":
            return "1" if mol.smallest_ring_size(idx) == 3 else "0"
        if name == "acidic":
            return "1" if self._acidic_oxygen() else "0"
        raise KeyError(name)

    def element_set(self, kind: str) -> set[str]:
        out = set()
        for n, b in self.mol.neighbors(self.idx):
            element = self.mol.atoms[n].element
            if kind == "nbr":
                out.add(element)
            elif kind == "snbr" and b.order == SINGLE:
                out.add(element)
            elif kind == "dbl" and b.order == DOUBLE:
                out.add(element)
        return out

    def _acidic_oxygen(self) -> bool:
        if self.atom.element != "O":
            return False
        for n, b in self.mol.neighbors(self.idx):
            if b.order == SINGLE and self.mol.atoms[n].element == "C":
                for n2, b2 in self.mol.neighbors(n):
                    if n2 != self.idx and b2.order == DOUBLE and self.mol.atoms[n2].element == "O":
                        return True
        return False


def _first_match(entries, env: _Environment) -> Entry | None:
    for entry in entries:
        if all(_test(env, key, op, value) for key, op, value in entry.tests):
            return entry
    return None


def _test(env: _Environment, key: str, op: str, value: str) -> bool:
    if key in ("nbr", "snbr", "dbl"):
        members = env.element_set(key)
        if value == "*":
            return bool(members)
        return value in members
    actual = env.key(key)
    if op == "=":
        return actual == value
    if op == ">=":
        return int(actual) >= int(value)
    if op == "<=":
        return int(actual) <= int(value)
    raise ValueError(f"unknown operator {op!r}")


def _parse_predicate(text: str, where: str) -> tuple[tuple[str, str, str], ...]:
    tests = []
    for token in text.split():
        for op in (">=", "<=", "="):
            if op in token:
                key, value = token.split(op, 1)
                tests.append((key, op, value))
                break
        else:
            raise ValueError(f"{where}: malformed predicate token {token!r}")
    return tuple(tests)


def load_table(name: str) -> ContributionTable:
    text = resources.files(__package__).joinpath(f"data/{name}").read_text()
    covers: frozenset[str] = frozenset()
    others = "zero"
    atom_entries: list[Entry] = []
    hydrogen_entries: list[Entry] = []
    section = "atoms"
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#covers:"):
            covers = frozenset(line.split(":", 1)[1].split())
            continue
        if line.startswith("#others:"):
            others = line.split(":", 1)[1].strip()
            continue
        if not line or line.startswith("#"):
            continue
        if line == "[atoms]":
            section = "atoms"
            continue
        if line == "[hydrogens]":
            section = "hydrogens"
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 3:
            raise ValueError(f"{name}:{lineno}: expected 'label | predicate | value'")
        entry = Entry(parts[0], _parse_predicate(parts[1], f"{name}:{lineno}"), float(parts[2]))
        (atom_entries if section == "atoms" else hydrogen_entries).append(entry)
    return ContributionTable(
        name=name,
        covers=covers,
        atom_entries=tuple(atom_entries),
        hydrogen_entries=tuple(hydrogen_entries),
        others=others,
    )
