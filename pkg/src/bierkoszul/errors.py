"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: ParseError -> 2, precondition
failures -> 3, budget/cap exhaustion -> 4, verification failure -> 5.
"""


class BierKoszulError(Exception):
    """Base class for all package errors."""


class ParseError(BierKoszulError):
    """Malformed input file or option value."""


class PreconditionError(BierKoszulError):
    """An operation was called on an object violating its contract."""


class UnknownVertex(PreconditionError):
    pass


class EmptyInput(PreconditionError):
    pass


class NotAFace(PreconditionError):
    pass


class NotPure(PreconditionError):
    pass


class NotFlag(PreconditionError):
    pass


class NotS2(PreconditionError):
    pass


class NotCM(PreconditionError):
    pass


class EvenDimension(PreconditionError):
    pass


class VoidComplex(PreconditionError):
    pass


class IsSimplex(PreconditionError):
    pass


class BadParams(PreconditionError):
    pass


class NotPalindromic(PreconditionError):
    pass


class LengthMismatch(PreconditionError):
    pass


class OutOfRange(PreconditionError):
    pass


class MixedGenerators(PreconditionError):
    pass


class NotSquarefree(PreconditionError):
    pass


class NotBlueGenerators(PreconditionError):
    pass


class UnsupportedFormat(PreconditionError):
    pass


class BudgetError(BierKoszulError):
    """A configured resource bound was exhausted."""


class CapExceeded(BudgetError):
    """A degree-capped Groebner basis was too short for the request."""


class BudgetExceeded(BudgetError):
    """A search ran out of its node budget."""


class SweepTooLarge(BudgetError):
    """A multidegree sweep would exceed the configured size."""

    def __init__(self, estimated, limit):
        super().__init__(f"multidegree sweep needs ~{estimated} degrees, limit {limit}")
        self.estimated = estimated
        self.limit = limit


class VerificationFailure(BierKoszulError):
    """A verify-style command found a red check."""
