"""Exception hierarchy shared by all pipeline stages."""


class ChamberlensError(Exception):
    """Base class for all pipeline errors."""


class FormatError(ChamberlensError):
    """Input file does not match the expected schema or column mapping."""


class ValidationError(ChamberlensError):
    """Arguments or data violate a documented invariant."""
