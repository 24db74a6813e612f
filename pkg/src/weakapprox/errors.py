"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or inconsistent user input."""


class SizeError(InputError):
    """A construction exceeded a configured size bound."""


class StructuralError(ValueError):
    """Operands that do not live in the same ambient object."""


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""
