"""Exception hierarchy shared by every module."""


class SemiregError(Exception):
    """Base class for all errors raised by this package."""


class PreconditionError(SemiregError, ValueError):
    """An operation was called with inputs violating its precondition."""


class DegreeMismatch(PreconditionError):
    pass


class NotTransitive(PreconditionError):
    pass


class WrongDegree(PreconditionError):
    pass


class NotInvariant(PreconditionError):
    pass


class NotSolvable(PreconditionError):
    pass


class TrivialGroup(PreconditionError):
    pass


class NotAutomorphisms(PreconditionError):
    pass


class NoSuchElement(SemiregError):
    pass


class BoundExceeded(SemiregError):
    """An enumeration budget was exhausted before the answer was known."""


class InvariantViolation(SemiregError):
    """A fact guaranteed by theory failed to hold at runtime.

    ``state`` carries whatever the raising site considered useful for a
    post-mortem (group generators, partitions, traces).
    """

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = dict(state or {})

    def __str__(self):
        msg = super().__str__()
        if not self.state:
            return msg
        dump = "; ".join(f"{k}={v}" for k, v in self.state.items())
        return f"{msg} [{dump}]"
