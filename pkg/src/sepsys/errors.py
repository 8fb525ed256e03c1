"""Exception hierarchy shared by every module."""


class SepsysError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(SepsysError):
    """Input violates a documented precondition."""


class DimensionError(ValidationError):
    """A state word does not match the component count."""


class ModelError(ValidationError):
    """The system is not of the required kind (e.g. not monotone)."""


class DomainError(ValidationError):
    """A parameter lies outside its admissible range."""


class DegenerateError(ValidationError):
    """Degenerate geometric input, e.g. an all-zero normal vector."""


class ConnectivityError(ValidationError):
    """Operation requires a connected graph."""


class ClassError(ValidationError):
    """Operation is not defined for the graph's separability class."""


class WitnessError(ValidationError):
    """A cost assignment does not certify separability."""


class SizeError(SepsysError):
    """Exhaustive enumeration would exceed the configured cap."""


class ParseError(ValidationError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
