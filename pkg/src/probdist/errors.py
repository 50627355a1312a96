"""Exception and warning types shared across the package."""


class DistributionError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(DistributionError, ValueError):
    """Evaluation points fall outside a domain, or probabilities outside [0, 1]."""


class DimensionError(DistributionError, ValueError):
    """A point or argument list has the wrong arity."""


class ParameterError(DistributionError, ValueError):
    """Base class for parameter-related errors."""


class ParameterConflictError(ParameterError):
    """Two parameters from the same parameterization group were given at once."""


class SupportViolationError(ParameterError):
    """A parameter value lies outside its declared support."""


class UnknownParameterError(ParameterError, KeyError):
    """A parameter id does not exist in the set."""

    def __str__(self):  # KeyError quotes its message; keep it readable
        return ParameterError.__str__(self)


class CapabilityError(DistributionError):
    """The operation needs a kernel or decorator the distribution does not have."""


class UnsupportedError(DistributionError):
    """The operation is not defined for this kind of distribution."""


class DegenerateTruncationError(DistributionError, ValueError):
    """The truncation interval carries zero probability mass."""


class NumericError(DistributionError):
    """A numerical routine failed to converge.

    Carries the best available estimate and an error bound so callers can
    decide whether the partial result is still usable.
    """

    def __init__(self, message, estimate=None, error_bound=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class ParameterWarning(UserWarning):
    """Recoverable parameter issue (same-group writes, weight renormalization)."""


class DecoratorWarning(UserWarning):
    """Recoverable decorator issue (e.g. re-applying an existing decorator)."""
