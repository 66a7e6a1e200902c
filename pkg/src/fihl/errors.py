"""Shared exception types."""


class InternalCheckError(RuntimeError):
    """A structural invariant the library enforces at runtime has failed.

    Raised for non-integral decompositions, d*d != 0, exactness failures
    and the like; always indicates a bug, never bad user input.
    """
