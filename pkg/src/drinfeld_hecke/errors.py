"""Exception hierarchy shared by all modules."""


class ComputationError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(ComputationError):
    """Inversion or division by a zero field/ring element."""


class ShapeError(ComputationError):
    """Matrix dimensions incompatible with the requested operation."""


class InvalidInput(ComputationError):
    """Argument outside the documented domain of an operation."""


class WrongDegree(ComputationError):
    """A polynomial argument has the wrong degree (e.g. a Hecke prime)."""


class GroupMismatch(ComputationError):
    """Operands belong to different groups or incompatible space specs."""


class InvariantViolation(ComputationError):
    """An internal consistency check failed; indicates a bug, never expected."""


class PrecisionError(ComputationError):
    """A Laurent-series computation ran out of known digits."""


class NotFoundWithinDepth(ComputationError):
    """Tree reduction found no group element within the search depth."""


class InternalError(ComputationError):
    """A condition the implementation guarantees impossible was observed."""
