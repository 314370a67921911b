"""Exception taxonomy shared by all boxgap modules."""


class BoxgapError(Exception):
    """Base class for all library errors."""


class ValidationError(BoxgapError, ValueError):
    """Bad input: wrong shape, non-positive weight, unknown method tag, ..."""


class CapabilityError(BoxgapError):
    """The requested exact path is outside its trustworthy range.

    The message names the fallback evaluator to use instead.
    """


class DomainError(BoxgapError, ValueError):
    """Mathematically undefined request (e.g. saddle point outside the support)."""


class NumericalError(BoxgapError, ArithmeticError):
    """An internal consistency probe failed; signals an evaluator bug."""
