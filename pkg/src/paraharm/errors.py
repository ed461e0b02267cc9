"""Exception types shared across the package."""


class ParaharmError(Exception):
    """Base class for all package errors."""


class DomainError(ParaharmError, ValueError):
    """An argument violates a documented precondition."""


class OrbitError(DomainError):
    """A target point does not lie in the requested orbit."""


class UnsupportedDescriptorError(DomainError):
    """The requested group family / algebra combination is not modeled."""


class QuadratureError(ParaharmError):
    """Numerical integration failed to meet its accuracy target."""
