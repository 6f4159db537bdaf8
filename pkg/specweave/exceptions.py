"""Error types raised by specweave."""


class SpecweaveError(Exception):
    """Base class for all specweave errors."""


class InvalidParam(SpecweaveError):
    """A parameter is outside its allowed range."""


class ConnectivityFailure(SpecweaveError):
    """No connected graph was drawn within the retry budget."""


class EmptyCore(SpecweaveError):
    """A subgraph core has no edges to optimize."""


class EmptyScope(SpecweaveError):
    """A degree-matching scope has no writable edges."""


class DimensionMismatch(SpecweaveError):
    """Array shapes do not agree with the cost degree."""


class InfeasibleBudget(SpecweaveError):
    """The budget cannot be met with every weight at or above the floor."""


class DegenerateBaseline(SpecweaveError):
    """J0 equals J* so the performance ratio is undefined."""


class ManifestError(SpecweaveError):
    """An experiment manifest is missing, malformed or references bad files."""
