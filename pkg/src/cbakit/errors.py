class CbakitError(Exception):
    """Base class for all package errors."""


class InputError(CbakitError):
    """Bad user input: malformed data, unknown names, out-of-range parameters."""


class ModelFormatError(InputError):
    """A serialized model could not be parsed or has an unsupported version."""
