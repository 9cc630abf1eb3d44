"""Exception hierarchy shared by all prft modules."""


class PrftError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(PrftError):
    """Input file or record does not conform to the expected format."""


class DataQualityError(PrftError):
    """Input parses but is too degraded to use (e.g. too many gaps)."""


class InsufficientDataError(PrftError):
    """Record too short for the requested operation."""


class DegenerateInputError(PrftError):
    """Operation undefined on this input (e.g. zero-variance series)."""


class DomainError(PrftError):
    """Values outside the mathematical domain of the operation."""


class FitError(PrftError):
    """Parameter estimation failed to converge."""
