"""Exception types shared across the package."""


class DmonoError(Exception):
    """Base class for every error this package raises on purpose."""


class InvalidElementError(DmonoError, ValueError):
    """An element id or name does not belong to the lattice it was used with."""


class LatticeValidationError(DmonoError, ValueError):
    """An explicit lattice description failed validation."""


class FileFormatError(DmonoError, ValueError):
    """A function or lattice file could not be parsed."""


class InvalidChainError(DmonoError, ValueError):
    """A purported chain is not strictly ascending."""


class InvalidSampleError(DmonoError, ValueError):
    """Positive and negative sample points overlap."""


class InconsistentSampleError(DmonoError, ValueError):
    """No function of the requested degree fits the labeled sample."""

    def __init__(self, message: str, point: int | None = None):
        super().__init__(message)
        self.point = point


class DegreeTooSmallError(DmonoError, ValueError):
    """The learner was invoked with a degree below the target's true degree."""

    def __init__(self, message: str, degree: int, point: int | None = None):
        super().__init__(message)
        self.degree = degree
        self.point = point


class GenerationError(DmonoError, RuntimeError):
    """Random instance generation exhausted its retry budget."""


class SizeCapExceededError(DmonoError, ValueError):
    """An exhaustive operation was asked to enumerate past the size cap."""


class InternalError(DmonoError, RuntimeError):
    """A safety cap fired; indicates a bug, not bad input."""
