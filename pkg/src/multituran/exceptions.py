"""Exception hierarchy shared by all modules."""


class MultiTuranError(Exception):
    """Base class for package errors."""


class InputError(MultiTuranError, ValueError):
    """Malformed or out-of-domain input (bad vertex, invalid partition, ...)."""


class CapabilityError(MultiTuranError):
    """Instance exceeds the sizes an exact routine is prepared to handle."""


class InvariantError(MultiTuranError, AssertionError):
    """An internally guaranteed property failed; always a bug worth reporting."""
