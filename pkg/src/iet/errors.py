"""Exception hierarchy.

Every error raised on a violated precondition derives from
:class:`PreconditionError`; text that fails to parse raises
:class:`ParseError`.  The CLI maps the two families to distinct exit codes.
"""


class IetError(ValueError):
    pass


class ParseError(IetError):
    pass


class PreconditionError(IetError):
    pass


# exact
class NonPositiveInput(PreconditionError):
    pass


# core
class EmptyInterval(PreconditionError):
    pass


class NonPositiveLength(PreconditionError):
    pass


class LengthSumMismatch(PreconditionError):
    pass


class InvalidPermutation(PreconditionError):
    pass


class PointOutsideDomain(PreconditionError):
    pass


class BaseMismatch(PreconditionError):
    pass


class SupportOutsideBase(PreconditionError):
    pass


class OverlappingBlocks(PreconditionError):
    pass


# factor
class NotFiniteOrder(PreconditionError):
    pass


class BoundExceeded(PreconditionError):
    def __init__(self, bound):
        super().__init__(f"order not found within {bound} iterations")
        self.bound = bound


class TypeMismatch(PreconditionError):
    pass


class OverlappingSupports(PreconditionError):
    pass


class PreconditionAB(PreconditionError):
    pass


class IdentityInput(PreconditionError):
    pass


class EpsTooLarge(PreconditionError):
    def __init__(self, eps0):
        super().__init__(f"eps must be positive and below {eps0}")
        self.eps0 = eps0


class NonzeroSaf(PreconditionError):
    def __init__(self, tensor):
        super().__init__(f"SAF invariant is nonzero: {tensor}")
        self.tensor = tensor


class NotBalanced(PreconditionError):
    pass


class TypeTooLarge(PreconditionError):
    pass
