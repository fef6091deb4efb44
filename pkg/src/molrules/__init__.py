"""molrules: rule-based molecular featurization, interpretable models,
and statistical rule validation with a pluggable chat-LLM rule oracle."""

__version__ = "0.1.0"
