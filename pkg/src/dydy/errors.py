"""Exception types shared across the package."""

from .dyadic import PrecisionError


class DomainError(ValueError):
    """An argument lies outside the range an operation is defined on."""


class NoConvergence(ArithmeticError):
    """Hensel/Newton lifting could not be started or did not converge."""


class WrongPeriod(ArithmeticError):
    """A lifted periodic point has a smaller exact period than requested."""


class CertificationError(Exception):
    """A disk-map certificate failed; ``witness`` holds the counterexample."""

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class VerificationFailure(Exception):
    """A theorem instance did not verify; ``trace`` holds the steps so far."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class StructuralError(ArithmeticError):
    """A Newton polygon does not have the shape an algorithm relies on."""

    def __init__(self, message, polygon=None):
        super().__init__(message)
        self.polygon = polygon


__all__ = [
    "CertificationError",
    "DomainError",
    "NoConvergence",
    "PrecisionError",
    "StructuralError",
    "VerificationFailure",
    "WrongPeriod",
]
