"""Exception definitions for contact-interactions."""


class ContactInteractionError(Exception):
    """Base exception for contact-interaction computations."""

    code = "contact_error"

    def __init__(self, message: str, context: dict | None = None):
        """Initialize error with message and optional context.

        Args:
            message: Human-readable error message
            context: Optional dict with error context (offending values, tolerances, etc.)
        """
        super().__init__(message)
        self.message = message
        self.context = context or {}


class InvalidParameterError(ContactInteractionError):
    """Raised when a physical parameter is outside its domain (k <= 0, b <= 0, u = 0, ...)."""

    code = "invalid_parameter"


class NonUnimodularError(ContactInteractionError):
    """Raised when a connection matrix is not in SL(2,R) within tolerance."""

    code = "non_unimodular"


class ChainOrderError(ContactInteractionError):
    """Raised when chain positions are not strictly increasing."""

    code = "chain_order"


class NumericalFailureError(ContactInteractionError):
    """Raised when a solve produces inconsistent or non-physical results."""

    code = "numerical_failure"


class DualityViolationError(ContactInteractionError):
    """Raised when a duality relation fails beyond its tolerance."""

    code = "duality_violation"


class ChainFileError(ContactInteractionError):
    """Raised when a chain description file cannot be read or validated."""

    code = "chain_file"
