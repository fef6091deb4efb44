"""Exception hierarchy shared across the package."""


class MolrulesError(Exception):
    """Base class for all errors raised by this package."""


class SmilesParseError(MolrulesError):
    """Raised when a SMILES string cannot be parsed.

    ``position`` is the 0-based offset into the input text where the
    problem was detected.
    """

    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} (position {position})"
        super().__init__(message)


class ValenceError(SmilesParseError):
    """Bond-order sum exceeds every allowed valence for an atom."""


class PatternParseError(MolrulesError):
    """Raised when a pattern string is not valid SMARTS-lite."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (position {position})"
        super().__init__(message)


class PatternBudgetError(MolrulesError):
    """Pattern exceeds the matcher's atom budget."""


class UnknownDescriptorError(MolrulesError):
    """Descriptor name not present in the registry."""


class UncoveredEnvironmentError(MolrulesError):
    """A contribution table met an atom environment it has no entry for."""


class RuleParseError(MolrulesError):
    """Rule DSL text does not conform to the grammar."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (position {position})"
        super().__init__(message)


class RulesetFormatError(MolrulesError):
    """Ruleset file is malformed; message carries line diagnostics."""


class OracleError(MolrulesError):
    """Backend failure (network, auth, HTTP) after bounded retries."""


class ReplayMissError(OracleError):
    """Replay transcript has no response for the requested prompt."""

    def __init__(self, prompt_hash):
        self.prompt_hash = prompt_hash
        super().__init__(f"no transcript entry for prompt hash {prompt_hash}")


class DataError(MolrulesError):
    """Dataset ingestion or split construction failed."""


class ConfigError(MolrulesError):
    """Run configuration is invalid or incomplete."""


class ModelFormatError(MolrulesError):
    """Persisted model document is malformed or incompatible."""
