"""Exception types shared across the library."""


class FracFrontError(Exception):
    """Base class for all library errors."""


class NonConvergence(FracFrontError):
    """A series or iteration exhausted its term budget before meeting tolerance."""


class DomainError(FracFrontError):
    """An argument is outside the domain where the operation is defined or trusted."""


class QuadratureFailure(FracFrontError):
    """A numerical integral did not converge to the requested tolerance."""


class Unsupported(FracFrontError):
    """The requested (rho, dim) combination has no implemented evaluation route."""


class InsufficientData(FracFrontError):
    """Not enough finite samples to classify a trajectory."""
