"""Exception taxonomy for the adapter."""


class AdapterError(Exception):
    """Base class for all adapter-raised errors."""


class FormatError(AdapterError):
    """An input file does not follow its documented format."""


class ValidationError(AdapterError):
    """A value breaks a documented invariant."""


class ModelError(AdapterError):
    """A model could not be loaded or is unusable for its slot."""
