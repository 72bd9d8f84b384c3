"""Exception types raised across tailkit."""


class TailkitError(Exception):
    """Base class for all tailkit errors."""


class CapacityError(TailkitError):
    """An enumeration guard would be exceeded."""


class CertificateError(TailkitError):
    """A proposed lower-bound certificate does not host enough structures."""

    def __init__(self, message, achieved=None, required=None):
        super().__init__(message)
        self.achieved = achieved
        self.required = required


class InfeasibleError(TailkitError):
    """The requested tail event is impossible (t*mu exceeds the maximum count)."""


class ValidationError(TailkitError, ValueError):
    """Input data violates a structural precondition."""


class ConsistencyError(TailkitError):
    """An internal cross-check failed."""
