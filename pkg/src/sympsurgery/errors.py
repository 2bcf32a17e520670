"""Exception hierarchy shared by all modules."""


class SympError(Exception):
    """Base class for all errors raised by this package."""


class InvalidDimensionError(SympError, ValueError):
    """Matrix or vector has a shape incompatible with a 2n x 2n structure."""


class InvalidValueError(SympError, ValueError):
    """A scalar argument is outside its admissible domain (e.g. zero)."""


class InvalidInputError(SympError, ValueError):
    """Inputs are individually valid but inconsistent with each other."""


class NotSymplecticError(SympError, ValueError):
    """Matrix fails the symplecticity residual gate."""

    def __init__(self, msg, residual):
        super().__init__(msg)
        self.residual = residual


class PairingError(SympError):
    """An eigenvalue has no reciprocal partner within tolerance."""

    def __init__(self, msg, orphan):
        super().__init__(msg)
        self.orphan = orphan


class NotAnEigenvalueError(SympError):
    """Requested value is not in the computed spectrum."""


class NotApplicableError(SympError):
    """No eigenvector pair with nonzero pairing exists.

    This happens exactly when every Jordan block of the eigenvalue has size
    at least two, so no trivial chain is available for the update.
    """

    def __init__(self, msg, segre=None):
        super().__init__(msg)
        self.segre = segre


class NotSimpleError(SympError):
    """Operation requires a simple eigenvalue."""


class InconsistentRootError(SympError):
    """Supplied eta is not a root of the coefficient polynomial."""


class NumericalFailureError(SympError):
    """Post-hoc residual check failed after an update."""

    def __init__(self, msg, residual):
        super().__init__(msg)
        self.residual = residual


class InvalidEigenpairError(SympError):
    """Supplied vectors are not eigenvectors of the pencil."""


class IllPosedError(SympError):
    """Pencil is (numerically) singular."""
