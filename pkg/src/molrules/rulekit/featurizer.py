"""Ruleset-backed featurizer with the transformer protocol."""

from __future__ import annotations

import numpy as np

from ..base import ParamsMixin
from ..molgraph import Molecule, parse_smiles
from .model import RuleSet, featurize


class RuleFeaturizer(ParamsMixin):
    """Turns molecules (or SMILES strings) into the ruleset's feature
    space. Stateless: ``fit`` only records the output dimension."""

    def __init__(self, ruleset: RuleSet):
        self.ruleset = ruleset

    def fit(self, X=None, y=None):
        self.n_features_out_ = len(self.ruleset)
        return self

    @staticmethod
    def _as_molecules(X) -> list[Molecule]:
        return [x if isinstance(x, Molecule) else parse_smiles(x) for x in X]

    def transform(self, X) -> np.ndarray:
        return featurize(self.ruleset, self._as_molecules(X)).values

    def fit_transform(self, X, y=None) -> np.ndarray:
        return self.fit(X, y).transform(X)

    def feature_names_out(self) -> list[str]:
        return list(self.ruleset.ids())
