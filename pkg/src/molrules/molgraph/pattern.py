"""SMARTS-lite: a closed substructure-pattern subset and its matcher.

The subset covers element symbols, aromatic lowercase, the ``*``
wildcard, bracket atoms with an H-count and charge, bond symbols
``- = # : ~``, branches, and ring closures. Anything else (recursion,
logical operators, stereo) is rejected with a named error. An unwritten
bond matches single or aromatic, as in full SMARTS.
"""

from __future__ import annotations

import re

from ..errors import PatternBudgetError, PatternParseError
from .model import (
    ANY_ORDER,
    AROMATIC,
    DOUBLE,
    SINGLE,
    TRIPLE,
    Molecule,
    Pattern,
    PatternAtom,
    PatternBond,
)
from .smiles import AROMATIC_ORGANIC, KNOWN_ELEMENTS, ORGANIC_SUBSET

MAX_PATTERN_ATOMS = 32

_BOND_SYMBOLS = {"-": SINGLE, "=": DOUBLE, "#": TRIPLE, ":": AROMATIC, "~": ANY_ORDER}

_BRACKET_RE = re.compile(
    r"(?P<element>se|as|\*|[bcnops]|[A-Z][a-z]?)"
    r"(?P<hcount>H\d*)?"
    r"(?P<charge>\+\d+|-\d+|\++|-+)?"
)

_UNSUPPORTED = {
    "$": "recursive SMARTS unsupported",
    "!": "logical operator '!' unsupported",
    "&": "logical operator '&' unsupported",
    ";": "logical operator ';' unsupported",
    ",": "logical operator ',' unsupported",
    "@": "stereochemistry unsupported in patterns",
    "/": "stereo bonds unsupported in patterns",
    "\\": "stereo bonds unsupported in patterns",
    ".": "disconnected patterns unsupported",
}


def _parse_bracket_atom(body: str, position: int) -> PatternAtom:
    for ch, message in _UNSUPPORTED.items():
        if ch in body:
            raise PatternParseError(message, position)
    match = _BRACKET_RE.fullmatch(body)
    if match is None or not match.group("element"):
        raise PatternParseError(f"malformed bracket atom [{body}]", position)
    raw = match.group("element")
    if raw == "*":
        element, aromatic = None, None
    elif raw.islower():
        element, aromatic = raw.capitalize(), True
    else:
        element, aromatic = raw, False
    if element is not None and element not in KNOWN_ELEMENTS:
        raise PatternParseError(f"unknown element {element!r}", position)
    hcount = match.group("hcount")
    if hcount is None:
        total_h = None
    elif hcount == "H":
        total_h = 1
    else:
        total_h = int(hcount[1:])
    charge_text = match.group("charge")
    if charge_text is None:
        charge = None
    elif set(charge_text) == {"+"}:
        charge = len(charge_text)
    elif set(charge_text) == {"-"}:
        charge = -len(charge_text)
    else:
        charge = int(charge_text)
    return PatternAtom(element=element, aromatic=aromatic, charge=charge, total_h=total_h)


def parse_pattern(text: str) -> Pattern:
    """Parse SMARTS-lite text into a connected :class:`Pattern`."""
    if not isinstance(text, str) or not text.strip():
        raise PatternParseError("empty pattern", 0)
    stripped = text.strip()
    if "$(" in stripped:
        raise PatternParseError("recursive SMARTS unsupported", stripped.find("$("))

    atoms: list[PatternAtom] = []
    bonds: list[PatternBond] = []
    prev: int | None = None
    pending: str | None = None
    pending_set = False
    branch_stack: list[int | None] = []
    ring_open: dict[int, tuple[int, str | None, bool]] = {}

    def connect(new_idx: int):
        nonlocal pending, pending_set
        if prev is not None:
            bonds.append(PatternBond(prev, new_idx, pending))
        pending = None
        pending_set = False

    i = 0
    n = len(stripped)
    while i < n:
        ch = stripped[i]

        if ch in _UNSUPPORTED:
            raise PatternParseError(_UNSUPPORTED[ch], i)

        if ch == "[":
            end = stripped.find("]", i)
            if end == -1:
                raise PatternParseError("unclosed bracket atom", i)
            atoms.append(_parse_bracket_atom(stripped[i + 1 : end], i))
            connect(len(atoms) - 1)
            prev = len(atoms) - 1
            i = end + 1
            continue

        if ch in _BOND_SYMBOLS:
            if pending_set:
                raise PatternParseError("two consecutive bond symbols", i)
            pending = _BOND_SYMBOLS[ch]
            pending_set = True
            i += 1
            continue

        if ch.isdigit() or ch == "%":
            if prev is None:
                raise PatternParseError("ring closure before any atom", i)
            if ch == "%":
                if i + 2 >= n or not stripped[i + 1 : i + 3].isdigit():
                    raise PatternParseError("'%' must be followed by two digits", i)
                number = int(stripped[i + 1 : i + 3])
                width = 3
            else:
                number = int(ch)
                width = 1
            if number in ring_open:
                open_atom, open_order, open_had = ring_open.pop(number)
                if open_atom == prev:
                    raise PatternParseError(f"ring closure {number} bonds an atom to itself", i)
                if open_had and pending_set and open_order != pending:
                    raise PatternParseError(f"conflicting bond orders on ring closure {number}", i)
                order = open_order if open_had else pending
                bonds.append(PatternBond(open_atom, prev, order))
            else:
                ring_open[number] = (prev, pending, pending_set)
            pending = None
            pending_set = False
            i += width
            continue

        if ch == "(":
            if prev is None:
                raise PatternParseError("branch opened before any atom", i)
            branch_stack.append(prev)
            i += 1
            continue

        if ch == ")":
            if not branch_stack:
                raise PatternParseError("unmatched ')'", i)
            prev = branch_stack.pop()
            i += 1
            continue

        if ch == "*":
            atoms.append(PatternAtom())
            connect(len(atoms) - 1)
            prev = len(atoms) - 1
            i += 1
            continue

        if ch.isupper():
            two = stripped[i : i + 2]
            if two in ("Cl", "Br"):
                symbol, width = two, 2
            elif ch in ORGANIC_SUBSET or ch == "H":
                symbol, width = ch, 1
            else:
                raise PatternParseError(
                    f"element {ch!r} must be written in brackets", i
                )
            atoms.append(PatternAtom(element=symbol, aromatic=False))
            connect(len(atoms) - 1)
            prev = len(atoms) - 1
            i += width
            continue

        if ch in AROMATIC_ORGANIC:
            atoms.append(PatternAtom(element=ch.upper(), aromatic=True))
            connect(len(atoms) - 1)
            prev = len(atoms) - 1
            i += 1
            continue

        raise PatternParseError(f"unsupported construct {ch!r}", i)

    if pending_set:
        raise PatternParseError("dangling bond symbol at end of pattern", n - 1)
    if branch_stack:
        raise PatternParseError("unclosed branch '('", n - 1)
    if ring_open:
        number = sorted(ring_open)[0]
        raise PatternParseError(f"unclosed ring closure {number}", n - 1)
    if not atoms:
        raise PatternParseError("pattern has no atoms", 0)
    if len(atoms) > MAX_PATTERN_ATOMS:
        raise PatternParseError(
            f"pattern has {len(atoms)} atoms, budget is {MAX_PATTERN_ATOMS}", 0
        )

    pattern = Pattern(atoms=tuple(atoms), bonds=tuple(bonds), source=text)
    _check_connected(pattern)
    return pattern


def _check_connected(pattern: Pattern):
    if len(pattern.atoms) <= 1:
        return
    seen = {0}
    stack = [0]
    while stack:
        for n, _ in pattern.adjacency[stack.pop()]:
            if n not in seen:
                seen.add(n)
                stack.append(n)
    if len(seen) != len(pattern.atoms):
        raise PatternParseError("pattern graph must be connected", 0)


def _atom_matches(mol: Molecule, mol_idx: int, constraint: PatternAtom) -> bool:
    atom = mol.atoms[mol_idx]
    if constraint.element is not None and atom.element != constraint.element:
        return False
    if constraint.aromatic is not None and atom.aromatic != constraint.aromatic:
        return False
    if constraint.charge is not None and atom.formal_charge != constraint.charge:
        return False
    if constraint.total_h is not None and mol.total_h(mol_idx) != constraint.total_h:
        return False
    return True


def _bond_matches(order: str, constraint: str | None) -> bool:
    if constraint is None:
        return order in (SINGLE, AROMATIC)
    if constraint == ANY_ORDER:
        return True
    return order == constraint


def _search_order(pattern: Pattern) -> list[tuple[int, int | None]]:
    """DFS order over pattern atoms; each entry is (atom, parent or None)."""
    order = [(0, None)]
    seen = {0}
    stack = [0]
    while stack:
        cur = stack.pop()
        for n, _ in pattern.adjacency[cur]:
            if n not in seen:
                seen.add(n)
                order.append((n, cur))
                stack.append(n)
    return order


def match_pattern(mol: Molecule, pattern: Pattern, first_only: bool = False) -> list[tuple[int, ...]]:
    """All injective embeddings of ``pattern`` into ``mol``.

    Each result maps pattern atom ``k`` to molecule atom ``result[k]``.
    With ``first_only`` the search stops at the first embedding.
    """
    if len(pattern.atoms) > MAX_PATTERN_ATOMS:
        raise PatternBudgetError(
            f"pattern has {len(pattern.atoms)} atoms, budget is {MAX_PATTERN_ATOMS}"
        )
    if len(pattern.atoms) > len(mol.atoms):
        return []

    order = _search_order(pattern)
    mapping: dict[int, int] = {}
    used: set[int] = set()
    results: list[tuple[int, ...]] = []

    def extend(step: int) -> bool:
        if step == len(order):
            results.append(tuple(mapping[k] for k in range(len(pattern.atoms))))
            return first_only
        p_idx, p_parent = order[step]
        constraint = pattern.atoms[p_idx]
        if p_parent is None:
            candidates = range(len(mol.atoms))
        else:
            candidates = [n for n, _ in mol.neighbors(mapping[p_parent])]
        for m_idx in candidates:
            if m_idx in used or not _atom_matches(mol, m_idx, constraint):
                continue
            ok = True
            for p_nbr, p_bond in pattern.adjacency[p_idx]:
                if p_nbr not in mapping:
                    continue
                mol_bond = mol.bond_between(m_idx, mapping[p_nbr])
                if mol_bond is None or not _bond_matches(mol_bond.order, p_bond.order):
                    ok = False
                    break
            if not ok:
                continue
            mapping[p_idx] = m_idx
            used.add(m_idx)
            if extend(step + 1):
                return True
            del mapping[p_idx]
            used.remove(m_idx)
        return False

    extend(0)
    return results


def count_matches(mol: Molecule, pattern: Pattern) -> int:
    """Number of distinct matched atom sets (count semantics)."""
    return len({frozenset(m) for m in match_pattern(mol, pattern)})


def has_match(mol: Molecule, pattern: Pattern) -> bool:
    return bool(match_pattern(mol, pattern, first_only=True))
