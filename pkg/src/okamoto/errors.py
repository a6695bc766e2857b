"""Exception hierarchy shared by all modules."""


class OkamotoError(Exception):
    """Base class for all library errors."""


class DomainError(OkamotoError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class UnsupportedRegionError(DomainError):
    """The parameter value falls in a region the operation does not cover."""


class ResourceError(OkamotoError, ValueError):
    """A requested level/size exceeds the configured resource cap."""


class PrecisionError(OkamotoError, ArithmeticError):
    """The requested tolerance cannot be certified with the given inputs.

    ``achievable`` carries the best error bound that was reachable."""

    def __init__(self, message: str, achievable: float | None = None):
        super().__init__(message)
        self.achievable = achievable
