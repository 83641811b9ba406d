"""Exception and warning types used across the library."""


class MixRenewalError(Exception):
    """Base class for all library errors."""


class ValidationError(MixRenewalError):
    """Raised when an input measure or parameter violates its contract."""


class DomainError(MixRenewalError):
    """Raised when an operation is requested outside its domain of validity
    (e.g. the free energy below the depinning threshold)."""


class ConsistencyError(MixRenewalError):
    """Raised when internally computed quantities fail a cross-check
    (e.g. the spectral construction loses mass)."""


class PrecisionLossWarning(UserWarning):
    """Emitted when a result is dominated by floating-point underflow and
    should not be trusted to the usual tolerances."""
