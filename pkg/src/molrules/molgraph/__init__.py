"""Molecular graphs: SMILES parsing, substructure matching, scaffolds,
and canonical keys."""

from .canon import canonical_key
from .elements import ATOMIC_MASSES, HALOGENS, KNOWN_ELEMENTS
from .model import (
    ANY_ORDER,
    AROMATIC,
    DOUBLE,
    SINGLE,
    TRIPLE,
    Atom,
    Bond,
    Molecule,
    Pattern,
    PatternAtom,
    PatternBond,
)
from .pattern import count_matches, has_match, match_pattern, parse_pattern
from .scaffold import EMPTY_SCAFFOLD, murcko_scaffold
from .smiles import StereoIgnoredWarning, parse_smiles

__all__ = [
    "ANY_ORDER",
    "AROMATIC",
    "ATOMIC_MASSES",
    "Atom",
    "Bond",
    "DOUBLE",
    "EMPTY_SCAFFOLD",
    "HALOGENS",
    "KNOWN_ELEMENTS",
    "Molecule",
    "Pattern",
    "PatternAtom",
    "PatternBond",
    "SINGLE",
    "StereoIgnoredWarning",
    "TRIPLE",
    "canonical_key",
    "count_matches",
    "has_match",
    "match_pattern",
    "murcko_scaffold",
    "parse_pattern",
    "parse_smiles",
]
