"""Exception hierarchy shared by every module of the package."""


class OrientDiamError(Exception):
    """Base class for all package errors."""


class GraphError(OrientDiamError, ValueError):
    """Malformed graph input, unknown vertex or missing edge."""


class NotConnectedError(GraphError):
    pass


class NotTwoEdgeConnectedError(GraphError):
    pass


class OrientationConflict(OrientDiamError):
    """An edge was asked to take the direction opposite to the one it already has."""


class PreconditionError(OrientDiamError, ValueError):
    pass


class VerificationError(OrientDiamError, AssertionError):
    """A machine-checked guarantee did not hold.

    This always signals a bug or a misreading of a construction; results that
    fail verification are never returned to the caller.
    """


class BudgetExceeded(OrientDiamError):
    """The exact oracle refuses instances above its edge budget."""
