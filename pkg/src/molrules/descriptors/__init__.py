"""Molecular descriptor registry and baseline fingerprints."""

from .contributions import ContributionTable, UncoveredEnvironmentWarning, load_table
from .fingerprints import ecfp4, tanimoto
from .registry import DescriptorId, compute, is_registered, list_descriptors

__all__ = [
    "ContributionTable",
    "DescriptorId",
    "UncoveredEnvironmentWarning",
    "compute",
    "ecfp4",
    "is_registered",
    "list_descriptors",
    "load_table",
    "tanimoto",
]
