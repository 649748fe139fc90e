"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed textual input (Pauli word, JSON file, ...)."""


class DomainError(ValueError):
    """Argument outside an operation's mathematical domain."""


class DimensionError(DomainError):
    """Objects with mismatched qubit counts were combined."""


class ResourceLimitError(DomainError):
    """A dense-matrix or state-space size cap was exceeded."""
