"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid argument or parameter combination."""


class UnsupportedOrderError(ParameterError):
    """Field order outside the supported range."""


class UnsupportedRegimeError(ParameterError):
    """Requested family does not exist for this (s, d) regime."""


class ResourceError(RuntimeError):
    """A size guard would be exceeded."""


class DomainError(ArithmeticError):
    """Operation undefined for this input (e.g. inverse of zero)."""
