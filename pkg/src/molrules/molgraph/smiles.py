"""SMILES parsing into :class:`Molecule`.

Supported notation: organic-subset atoms, aromatic lowercase, bracket
atoms (isotope, element, H count, charge), bonds ``- = # :``, branches,
ring closures (single digit and ``%nn``), and dot-separated components.
Stereo markers (``/ \\ @``) are parsed and dropped with a warning.
Implicit hydrogens follow the default-valence table shipped next to this
module: the smallest allowed valence at or above the atom's bond-order
sum, with aromatic bonds counting 1.5 and the sum rounded up.
"""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass
from importlib import resources

from ..errors import SmilesParseError, ValenceError
from .elements import KNOWN_ELEMENTS
from .model import AROMATIC, DOUBLE, SINGLE, TRIPLE, BOND_VALENCE, Atom, Bond, Molecule
from .rings import perceive_rings

ORGANIC_SUBSET = {"B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I"}
AROMATIC_ORGANIC = {"b", "c", "n", "o", "p", "s"}
AROMATIC_BRACKET = AROMATIC_ORGANIC | {"se", "as"}

BOND_SYMBOLS = {"-": SINGLE, "=": DOUBLE, "#": TRIPLE, ":": AROMATIC}

_BRACKET_RE = re.compile(
    r"(?P<isotope>\d+)?"
    r"(?P<element>se|as|\*|[bcnops]|[A-Z][a-z]?)"
    r"(?P<stereo>@{1,2})?"
    r"(?P<hcount>H\d*)?"
    r"(?P<charge>\+\d+|-\d+|\++|-+)?"
    r"(?::(?P<map>\d+))?"
)


class StereoIgnoredWarning(UserWarning):
    """Stereochemistry token seen and discarded."""


def _load_valences() -> dict[str, tuple[int, ...]]:
    table = {}
    text = resources.files(__package__).joinpath("data/valences.txt").read_text()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        table[parts[0]] = tuple(int(v) for v in parts[1:])
    return table


DEFAULT_VALENCES = _load_valences()


@dataclass
class AtomSpec:
    """Raw atom attributes before hydrogen assignment."""

    element: str
    aromatic: bool = False
    charge: int = 0
    explicit_h: int | None = None
    isotope: int | None = None
    position: int | None = None


def _parse_bracket(body: str, position: int) -> AtomSpec:
    match = _BRACKET_RE.fullmatch(body)
    if match is None or not match.group("element"):
        raise SmilesParseError(f"malformed bracket atom [{body}]", position)
    raw = match.group("element")
    if raw == "*":
        raise SmilesParseError("wildcard atom not allowed in molecule SMILES", position)
    aromatic = raw in AROMATIC_BRACKET
    element = raw.capitalize()
    if element not in KNOWN_ELEMENTS:
        raise SmilesParseError(f"unknown element {element!r}", position)
    if match.group("stereo"):
        warnings.warn(
            f"stereo marker in [{body}] ignored", StereoIgnoredWarning, stacklevel=4
        )
    hcount = match.group("hcount")
    if hcount is None:
        explicit_h = 0
    elif hcount == "H":
        explicit_h = 1
    else:
        explicit_h = int(hcount[1:])
    charge_text = match.group("charge") or ""
    if charge_text in ("",):
        charge = 0
    elif set(charge_text) == {"+"}:
        charge = len(charge_text)
    elif set(charge_text) == {"-"}:
        charge = -len(charge_text)
    else:
        charge = int(charge_text)
    isotope = int(match.group("isotope")) if match.group("isotope") else None
    return AtomSpec(element, aromatic, charge, explicit_h, isotope, position)


def assign_implicit_hydrogens(spec: AtomSpec, bond_sum: float) -> int:
    """Implicit H for one atom given its total bond-order sum."""
    if spec.explicit_h is not None:
        return 0
    units = int(math.ceil(bond_sum - 1e-9))
    valences = DEFAULT_VALENCES.get(spec.element)
    if valences is None:
        # bare organic-subset atoms always have a table entry; this guards
        # synthetic specs built programmatically
        return 0
    if spec.aromatic:
        # the ring pi system absorbs any excess; never promote an aromatic
        # atom to a higher valence state (n with three connections has no H)
        return max(0, valences[0] - units)
    for v in valences:
        if v >= units:
            return v - units
    raise ValenceError(
        f"bond-order sum {units} for {spec.element} exceeds allowed valences "
        f"{list(valences)}",
        spec.position,
    )


def build_molecule(specs: list[AtomSpec], bonds: list[tuple[int, int, str]], source: str = "") -> Molecule:
    """Assemble a validated Molecule from atom specs and bond triples.

    Runs hydrogen assignment, ring perception, and aromatic consistency
    checks; also the constructor used for derived molecules (scaffolds).
    """
    seen_pairs = set()
    bond_objs = []
    for a1, a2, order in bonds:
        key = (min(a1, a2), max(a1, a2))
        if key in seen_pairs:
            raise SmilesParseError(
                f"duplicate bond between atoms {key[0]} and {key[1]}",
                specs[a2].position,
            )
        seen_pairs.add(key)
        bond_objs.append(Bond(a1, a2, order))

    sums = [0.0] * len(specs)
    for bond in bond_objs:
        sums[bond.a1] += BOND_VALENCE[bond.order]
        sums[bond.a2] += BOND_VALENCE[bond.order]

    atoms = []
    for i, spec in enumerate(specs):
        implicit = assign_implicit_hydrogens(spec, sums[i])
        atoms.append(
            Atom(
                element=spec.element,
                index=i,
                aromatic=spec.aromatic,
                formal_charge=spec.charge,
                explicit_h=spec.explicit_h,
                isotope=spec.isotope,
                implicit_h=implicit,
            )
        )

    rings = perceive_rings(len(specs), [(b.a1, b.a2) for b in bond_objs])
    mol = Molecule(atoms=tuple(atoms), bonds=tuple(bond_objs), rings=rings, source=source)

    for bond in bond_objs:
        if bond.order == AROMATIC and not mol.bond_in_ring(bond.a1, bond.a2):
            raise SmilesParseError(
                f"aromatic bond between atoms {bond.a1} and {bond.a2} is not in a ring",
                specs[bond.a1].position,
            )
    for atom in atoms:
        if atom.aromatic and not mol.in_ring(atom.index):
            raise SmilesParseError(
                f"aromatic atom {atom.element} at index {atom.index} is not in a ring",
                specs[atom.index].position,
            )
    return mol


def parse_smiles(text: str) -> Molecule:
    """Parse a SMILES string; pure and deterministic.

    Raises :class:`SmilesParseError` (with position) on syntax problems,
    unclosed ring closures, unknown elements, and unmatched branches;
    :class:`ValenceError` when an atom exceeds every allowed valence.
    """
    if not isinstance(text, str):
        raise SmilesParseError("SMILES input must be a string")
    stripped = text.strip()
    if not stripped:
        raise SmilesParseError("empty SMILES string", 0)

    specs: list[AtomSpec] = []
    bonds: list[tuple[int, int, str]] = []
    prev: int | None = None
    pending: str | None = None
    pending_pos = 0
    branch_stack: list[int | None] = []
    ring_open: dict[int, tuple[int, str | None, int]] = {}

    def connect(new_idx: int):
        nonlocal pending
        if prev is not None:
            order = pending
            if order is None:
                order = (
                    AROMATIC
                    if specs[prev].aromatic and specs[new_idx].aromatic
                    else SINGLE
                )
            bonds.append((prev, new_idx, order))
        elif pending is not None:
            raise SmilesParseError("bond symbol with no preceding atom", pending_pos)
        pending = None

    i = 0
    n = len(stripped)
    while i < n:
        ch = stripped[i]

        if ch == "[":
            end = stripped.find("]", i)
            if end == -1:
                raise SmilesParseError("unclosed bracket atom", i)
            spec = _parse_bracket(stripped[i + 1 : end], i)
            specs.append(spec)
            connect(len(specs) - 1)
            prev = len(specs) - 1
            i = end + 1
            continue

        if ch in BOND_SYMBOLS or ch in "/\\":
            if pending is not None:
                raise SmilesParseError("two consecutive bond symbols", i)
            if ch in "/\\":
                warnings.warn(
                    f"stereo bond {ch!r} treated as single", StereoIgnoredWarning, stacklevel=2
                )
                pending = SINGLE
            else:
                pending = BOND_SYMBOLS[ch]
            pending_pos = i
            i += 1
            continue

        if ch.isdigit() or ch == "%":
            if prev is None:
                raise SmilesParseError("ring closure before any atom", i)
            if ch == "%":
                if i + 2 >= n or not stripped[i + 1 : i + 3].isdigit():
                    raise SmilesParseError("'%' must be followed by two digits", i)
                number = int(stripped[i + 1 : i + 3])
                width = 3
            else:
                number = int(ch)
                width = 1
            if number in ring_open:
                open_atom, open_order, open_pos = ring_open.pop(number)
                if open_atom == prev:
                    raise SmilesParseError(f"ring closure {number} bonds an atom to itself", i)
                if open_order is not None and pending is not None and open_order != pending:
                    raise SmilesParseError(
                        f"conflicting bond orders on ring closure {number}", i
                    )
                order = open_order or pending
                if order is None:
                    order = (
                        AROMATIC
                        if specs[open_atom].aromatic and specs[prev].aromatic
                        else SINGLE
                    )
                bonds.append((open_atom, prev, order))
            else:
                ring_open[number] = (prev, pending, i)
            pending = None
            i += width
            continue

        if ch == "(":
            if prev is None:
                raise SmilesParseError("branch opened before any atom", i)
            if pending is not None:
                raise SmilesParseError("bond symbol before branch open", i)
            branch_stack.append(prev)
            i += 1
            continue

        if ch == ")":
            if not branch_stack:
                raise SmilesParseError("unmatched ')'", i)
            if pending is not None:
                raise SmilesParseError("dangling bond symbol before ')'", pending_pos)
            prev = branch_stack.pop()
            i += 1
            continue

        if ch == ".":
            if pending is not None:
                raise SmilesParseError("bond symbol before '.'", pending_pos)
            if branch_stack:
                raise SmilesParseError("component separator inside branch", i)
            prev = None
            i += 1
            continue

        if ch == "*":
            raise SmilesParseError("wildcard atom not allowed in molecule SMILES", i)

        if ch.isupper():
            two = stripped[i : i + 2]
            if two in ("Cl", "Br"):
                symbol, width = two, 2
            elif ch in ORGANIC_SUBSET:
                symbol, width = ch, 1
            elif two.isalpha() and two[1].islower() and two in KNOWN_ELEMENTS:
                raise SmilesParseError(f"element {two!r} must be written in brackets", i)
            elif ch in KNOWN_ELEMENTS:
                raise SmilesParseError(f"element {ch!r} must be written in brackets", i)
            else:
                raise SmilesParseError(f"unknown element {ch!r}", i)
            specs.append(AtomSpec(symbol, position=i))
            connect(len(specs) - 1)
            prev = len(specs) - 1
            i += width
            continue

        if ch in AROMATIC_ORGANIC:
            specs.append(AtomSpec(ch.upper(), aromatic=True, position=i))
            connect(len(specs) - 1)
            prev = len(specs) - 1
            i += 1
            continue

        if ch.islower() and i > 0 and stripped[i - 1 : i + 1] in KNOWN_ELEMENTS:
            raise SmilesParseError(
                f"element {stripped[i - 1 : i + 1]!r} must be written in brackets", i - 1
            )
        raise SmilesParseError(f"unexpected character {ch!r}", i)

    if pending is not None:
        raise SmilesParseError("dangling bond symbol at end of input", pending_pos)
    if branch_stack:
        raise SmilesParseError("unclosed branch '('", n - 1)
    if ring_open:
        number, (_, _, pos) = sorted(ring_open.items())[0]
        raise SmilesParseError(f"unclosed ring closure {number}", pos)

    return build_molecule(specs, bonds, source=text)
