class SymstratError(Exception):
    """Base class for library errors."""


class ResourceBoundError(SymstratError):
    """An enumeration would exceed its configured size guard."""


class MismatchedSumError(SymstratError, ValueError):
    """Two partitions that must partition the same integer do not."""


class UnsupportedModelError(SymstratError, ValueError):
    """The manifold model cannot be used for an exact computation."""


class OrientationError(SymstratError, ValueError):
    """A range formula was applied to a manifold of the wrong orientability."""
