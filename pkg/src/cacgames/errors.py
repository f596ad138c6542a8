"""Exception types shared across the package."""


class GameInputError(ValueError):
    """Malformed or inconsistent input: files, weights, thresholds, node ids."""


class SizeCapError(GameInputError):
    """An exhaustive scan was asked for more states than its cap allows."""


class PreconditionError(ValueError):
    """A documented precondition of an operation does not hold."""


class DegenerateNodeError(ValueError):
    """A formula needs to divide by a restricted degree that is zero."""


class PathValidationError(ValueError):
    """A proposed best-response path breaks the single-move or argmax rules."""


class GuaranteeViolationError(RuntimeError):
    """Something happened that the convergence guarantees rule out.

    Raised only for outcomes that are provably impossible for valid inputs,
    so it always indicates an implementation bug, never a property of the
    game under analysis.
    """
