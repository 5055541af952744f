"""Exception types raised across the package."""


class FieldError(ValueError):
    """Base class for finite-field construction and arithmetic errors."""


class ReducibleModulus(FieldError):
    pass


class NoGeneratorFound(FieldError):
    pass


class DegreeTooLarge(FieldError):
    pass


class SpecMismatch(FieldError):
    """Operands belong to different fields."""


class DivisionByZero(ZeroDivisionError):
    pass


class BadTowerIndex(FieldError):
    pass


class NotADivisor(FieldError):
    pass


class ZeroInput(FieldError):
    pass


class NotInSubfield(FieldError):
    pass


class ZeroCoefficient(FieldError):
    pass


class UnsupportedFamily(ValueError):
    pass


class PreconditionError(ValueError):
    """An input violates the stated hypothesis of a checker."""
