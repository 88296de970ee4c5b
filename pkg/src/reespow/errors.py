"""Exception types shared across the package."""


class RingMismatchError(ValueError):
    """Raised when operands live over different rings or ambient ranks."""


class ResourceLimitError(RuntimeError):
    """Raised when a computation exceeds a configured size bound."""


class DegreeGuardError(ResourceLimitError):
    """Raised when an intermediate term exceeds the ring's degree bound."""


class UnsupportedInstanceError(ValueError):
    """Raised when an exact answer is out of reach for the given input.

    Callers that can degrade gracefully catch this and emit an explicit
    UNSUPPORTED marker instead of a silently wrong value.
    """


class EngineInconsistencyError(RuntimeError):
    """Two independent routes to the same invariant disagreed.

    This always indicates a bug in the engine, never a property of the
    input, so it is deliberately loud.
    """


class InstanceParseError(ValueError):
    """Raised on malformed instance files, carrying a line number."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")
