class CorrnetError(Exception):
    """Base class for every error raised by corrnet."""


class ArgumentError(CorrnetError, ValueError):
    """An operation was called outside its preconditions."""


class CapacityError(CorrnetError):
    """An exhaustive search was asked to exceed its budget."""


class DegenerateInputError(CorrnetError):
    """The input carries no signal to work with."""


class InternalError(CorrnetError):
    """An internal invariant was broken."""
