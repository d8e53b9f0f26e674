"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConfigurationError(ValueError):
    """Parameters are individually valid but cannot be combined as requested."""


class PreconditionError(ValueError):
    """A checker was called outside the region where its statement applies."""


class CertificationError(ArithmeticError):
    """Interval evaluation could not certify a result within the precision cap."""


class ResourceError(RuntimeError):
    """A simulation would exceed the configured wire budget."""
