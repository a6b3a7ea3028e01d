"""Exception hierarchy shared by every quditinv module."""


class QuditInvError(Exception):
    """Base class for all library errors."""


class ArgumentError(QuditInvError, ValueError):
    """Invalid argument: bad shape, out-of-range parameter, malformed label."""


class CapacityError(ArgumentError):
    """A dense tensor would exceed the configured component limit."""


class UnsupportedParityError(ArgumentError):
    """The requested invariant does not exist for this parity of k."""


class IntegrityError(QuditInvError, ArithmeticError):
    """An exact computation produced a value that must be impossible.

    Raised when a character sum is not divisible by the group order, or when
    a multiplicity comes out negative or fractional. Either means a bug in the
    character machinery, never bad user input.
    """


class GeneratorError(QuditInvError, RuntimeError):
    """A random sampler exhausted its retry budget."""
