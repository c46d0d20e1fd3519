"""Exception types shared across the package."""


class OreError(Exception):
    """Base class for all orekit errors."""


class RingMismatch(OreError):
    """Operands belong to different rings or contexts."""


class GuardExceeded(OreError):
    """An exhaustive search or enumeration would exceed its configured guard."""

    def __init__(self, message, size=None, limit=None):
        super().__init__(message)
        self.size = size
        self.limit = limit


class ParseError(OreError):
    """Bad literal or polynomial syntax."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class ShapeError(OreError):
    """Input has the wrong shape for the requested operation."""


class SchemaError(OreError):
    """Configuration document violates the schema."""

    def __init__(self, message, path="$"):
        super().__init__(f"{message} (at {path})")
        self.path = path


class PreconditionError(OreError):
    """A documented operation precondition does not hold for these inputs."""
