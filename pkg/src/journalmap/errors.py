"""Exception hierarchy shared across the package.

Every error carries a single-line human-readable message; the CLI relies on
that when printing machine-readable failure reasons.
"""


class JournalMapError(Exception):
    """Base class for all domain errors raised by this package."""


class FormatError(JournalMapError):
    """An input file does not conform to its documented format."""


class ValidationError(JournalMapError):
    """Input values are well-formed but violate a contract."""


class UsageError(JournalMapError):
    """A parameter is outside its allowed range or enumeration."""


class UnknownJournalError(JournalMapError):
    """A journal lookup failed where a known journal was required."""
