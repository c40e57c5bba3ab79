"""Exception hierarchy shared by all modules."""


class ConcurHomologyError(Exception):
    pass


class InputError(ConcurHomologyError, ValueError):
    """Unknown identifier or malformed document."""


class NotReachableError(ConcurHomologyError):
    pass


class FiringError(ConcurHomologyError):
    pass


class LimitExceeded(ConcurHomologyError):
    """Net exploration would cross a configured bound.

    ``marking`` is the canonical encoding of the offending marking.
    """

    def __init__(self, message, marking=None):
        super().__init__(message)
        self.marking = marking


class StateLimitExceeded(LimitExceeded):
    pass


class TokenLimitExceeded(LimitExceeded):
    pass


class AlphabetMismatch(ConcurHomologyError):
    pass


class FixtureError(ConcurHomologyError, ValueError):
    pass
