"""Exception types shared across the package."""


class RbtriError(Exception):
    """Base class for all errors raised by rbtri."""


class InvalidVertex(RbtriError, ValueError):
    pass


class InvalidArgument(RbtriError, ValueError):
    pass


class InvalidWitness(RbtriError, ValueError):
    pass


class InvalidCertificate(RbtriError, ValueError):
    pass


class ParseError(RbtriError, ValueError):
    pass


class BudgetExhausted(RbtriError):
    """A node budget ran out before the search finished.

    ``lo`` and ``hi`` bracket the quantity being computed when the search can
    say anything about it; either may be ``None``.
    """

    def __init__(self, message="node budget exhausted", lo=None, hi=None, nodes=0):
        super().__init__(message)
        self.lo = lo
        self.hi = hi
        self.nodes = nodes


class Inconclusive(RbtriError):
    """Raised by class-level computations when some member ran out of budget."""

    def __init__(self, message, lo=None, hi=None):
        super().__init__(message)
        self.lo = lo
        self.hi = hi
