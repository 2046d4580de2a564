"""Exception hierarchy.

The CLI maps these onto exit codes: InputError -> 1,
PreconditionError -> 2, InvariantError -> 3.
"""


class GenrankError(Exception):
    pass


class InputError(GenrankError, ValueError):
    """Malformed or inconsistent input data."""

    def __init__(self, message, location=None):
        self.location = location
        self.message = message
        if location is not None:
            message = "%s: %s" % (location, message)
        super().__init__(message)


class FunctorialityError(InputError):
    """A module whose structure maps do not compose.

    ``square`` holds the offending data: for posets a triple
    ``(p, c, q)`` where going through the cover ``p < c`` disagrees with
    the canonical composite ``p <= q``; for categories a triple
    ``(g, f, g∘f)``.
    """

    def __init__(self, message, square=None, location=None):
        self.square = square
        super().__init__(message, location)


class PreconditionError(GenrankError, ValueError):
    """A mathematical precondition does not hold (e.g. disconnected index)."""


class InvariantError(GenrankError, AssertionError):
    """An internal consistency check failed."""


class RedundantRelationWarning(UserWarning):
    """A relation given as a cover is implied by the others."""
