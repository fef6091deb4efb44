"""Element data loaded from the versioned tables shipped with the package."""

from __future__ import annotations

from importlib import resources


def _load_table(name: str) -> dict[str, list[float]]:
    table: dict[str, list[float]] = {}
    text = resources.files(__package__).joinpath(f"data/{name}").read_text()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        table[parts[0]] = [float(v) for v in parts[1:]]
    return table


ATOMIC_MASSES: dict[str, float] = {k: v[0] for k, v in _load_table("atomic_masses.txt").items()}

KNOWN_ELEMENTS = frozenset(ATOMIC_MASSES)

HALOGENS = frozenset({"F", "Cl", "Br", "I"})
