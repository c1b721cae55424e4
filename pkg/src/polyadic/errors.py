"""Exception hierarchy.

Every error raised by the library derives from :class:`PolyadicError`, so
callers (the CLI in particular) can separate bad input from bugs.
"""


class PolyadicError(Exception):
    pass


# -- input validation -------------------------------------------------------

class InvalidTable(PolyadicError, ValueError):
    """A Cayley or operation table fails a structural check."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotLatin(InvalidTable):
    pass


class NotAssociative(InvalidTable):
    pass


class NoIdentity(InvalidTable):
    pass


class BadShape(PolyadicError, ValueError):
    pass


class ArityMismatch(PolyadicError, ValueError):
    pass


class ParseError(PolyadicError, ValueError):
    pass


class UnknownClass(PolyadicError, KeyError):
    pass


class UnknownSuite(PolyadicError, KeyError):
    pass


class InvalidParams(PolyadicError, ValueError):
    pass


# -- algebraic preconditions ------------------------------------------------

class NotNormal(PolyadicError, ValueError):
    pass


class NotCentral(PolyadicError, ValueError):
    pass


class ConditionViolated(PolyadicError, ValueError):
    """A Hosszu-Gluskin condition fails.

    ``condition`` is ``"theta_fixes_b"``, ``"theta_power_inner"`` or
    ``"not_automorphism"``.
    """

    def __init__(self, message, condition, witness=None):
        super().__init__(message)
        self.condition = condition
        self.witness = witness


class PreconditionViolated(PolyadicError, ValueError):
    pass


class NotAHom(PolyadicError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotACongruence(PolyadicError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidThread(PolyadicError, ValueError):
    pass


class IncompatibleSystem(PolyadicError, ValueError):
    pass


# -- construction failures (must not happen on valid input) ----------------

class NotFound(PolyadicError):
    pass


class ConstructionFailed(PolyadicError):
    pass


class ExtensionNotFound(PolyadicError):
    pass


class NotASubgroup(PolyadicError):
    pass


class IllDefined(PolyadicError):
    pass


class NotInjective(PolyadicError):
    pass


class EmptyLimit(PolyadicError):
    pass


class BudgetExceeded(PolyadicError):
    pass
