"""Exception hierarchy shared by all symplectica modules."""


class SymplecticaError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(SymplecticaError, ValueError):
    """A matrix or vector has the wrong shape for the requested operation."""


class InvalidArgumentError(SymplecticaError, ValueError):
    """An argument is well-shaped but violates a precondition."""


class NotPositiveDefiniteError(SymplecticaError, ValueError):
    """A matrix required to be strictly positive definite is not."""


class InvalidStateError(SymplecticaError, ValueError):
    """Covariance data violates the uncertainty inequality ``2S - iJ >= 0``.

    Attributes
    ----------
    margin : float
        Minimum eigenvalue of the real embedding of ``2S - iJ``.
    """

    def __init__(self, message, margin=None):
        super().__init__(message)
        self.margin = margin


class InvalidChannelError(SymplecticaError, ValueError):
    """Channel parameters violate the invariant of their channel family."""

    def __init__(self, message, margin=None):
        super().__init__(message)
        self.margin = margin


class CertificationError(SymplecticaError, ArithmeticError):
    """A constructed object failed its own numerical post-condition check."""


class SchemaError(SymplecticaError, ValueError):
    """Serialized input is malformed or does not match the expected schema."""
