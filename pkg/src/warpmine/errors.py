"""Exception types shared across the package."""


class GraphParseError(ValueError):
    """Raised for malformed edge-list input; carries the offending line number."""

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = "line %d: %s" % (line_number, message)
        super().__init__(message)
        self.line_number = line_number


class DictionaryFormatError(ValueError):
    """Raised when a dictionary file fails magic/version/length validation."""


class CapacityError(RuntimeError):
    """Raised when a per-level extension array would exceed its capacity."""


class InternalInvariantError(RuntimeError):
    """Raised when the engine violates one of its own invariants.

    Seeing this means a bug in the engine, not bad user input; the CLI maps
    it to exit status 2.
    """


class StoreShutdownError(RuntimeError):
    """Raised by producers when the store-buffer consumer is gone."""
