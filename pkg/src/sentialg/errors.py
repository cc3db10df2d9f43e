"""Exception hierarchy shared across the toolkit.

Every error carries an ``exit_code`` used by the command line layer:
2 for usage/config/input-format problems, 1 for data-driven pipeline
failures.
"""

from __future__ import annotations


class SentialgError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


class ConfigError(SentialgError):
    """Invalid configuration: unknown key, bad value, missing path."""

    exit_code = 2


class MalformedLine(SentialgError):
    """A structured input file contains a line that cannot be parsed."""

    exit_code = 2

    def __init__(self, line_no: int, reason: str, path: str | None = None):
        self.line_no = line_no
        self.reason = reason
        self.path = path
        where = f"{path}:{line_no}" if path else f"line {line_no}"
        super().__init__(f"{where}: {reason}")


class FormatVersionMismatch(SentialgError):
    """A persisted artifact does not carry the expected format header."""

    exit_code = 2

    def __init__(self, expected: str, found: str, path: str | None = None):
        self.expected = expected
        self.found = found
        where = f"{path}: " if path else ""
        super().__init__(f"{where}expected header {expected!r}, found {found!r}")


class EmptySeed(SentialgError):
    """The seed valence lexicon contains no entries."""


class EmptyCorpus(SentialgError):
    """A fit/train operation received an empty corpus."""


class InvalidHyperparameter(SentialgError):
    """A hyperparameter is outside its documented range."""

    exit_code = 2


class SingleClassDataset(SentialgError):
    """Training data contains only one of the two classes."""


class DimensionMismatch(SentialgError):
    """Feature dimension does not match the owning model."""

    exit_code = 2


class InsufficientData(SentialgError):
    """A (script, label) cell cannot supply the requested sample size."""

    def __init__(self, cell: str, available: int, requested: int):
        self.cell = cell
        self.available = available
        self.requested = requested
        super().__init__(
            f"cell {cell}: requested {requested}, only {available} available"
        )


class StratumTooSmall(SentialgError):
    """A stratified split stratum has fewer items than the minimum."""


class LengthMismatch(SentialgError):
    """Paired sequences (gold/predicted labels, features/labels) differ in length."""
