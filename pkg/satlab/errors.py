"""Exceptions raised by the library. All of them are ValueErrors at heart."""


class SatlabError(ValueError):
    """Base class for every error raised on bad input."""


class PatternError(SatlabError):
    """Invalid clique pattern (sizes out of range, wrong length, unsorted)."""


class GraphError(SatlabError):
    """Graph dimension mismatch or lattice size cap exceeded."""


class FormatError(SatlabError):
    """Malformed graph text or JSON document."""


class ConstructionError(SatlabError):
    """Preconditions of an extremal construction are violated."""


class FormulaError(SatlabError):
    """Index or range violation in a counting formula."""


class FamilyError(SatlabError):
    """Set-pair family with elements outside its ground set or mismatched lengths."""


class ConfigError(SatlabError):
    """Unreadable config file or a setting of the wrong type."""
