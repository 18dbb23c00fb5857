"""Exception hierarchy.

Two families matter to callers: :class:`ValidationError` means the input was
bad, :class:`TheoremViolation` means a proven inequality failed to hold on a
concrete instance, which can only happen through an implementation bug.
"""


class SarkozyError(Exception):
    pass


class ValidationError(SarkozyError):
    pass


class TheoremViolation(SarkozyError):
    pass


class NonPrimeCharacteristic(ValidationError):
    pass


class SizeLimitExceeded(ValidationError):
    pass


class FieldMismatch(ValidationError):
    pass


class DivisionByZero(ValidationError, ZeroDivisionError):
    pass


class OutOfRange(ValidationError):
    pass


class ElementOutOfRange(OutOfRange):
    pass


class ArityMismatch(ValidationError):
    pass


class NonzeroConstantTerm(ValidationError):
    pass


class ZeroPolynomial(ValidationError):
    pass


class CoefficientsNotInPrimeField(ValidationError):
    pass


class EmptySet(ValidationError):
    pass


class DuplicatePoints(ValidationError):
    pass


class MuSumZero(ValidationError):
    pass


class NotFree(ValidationError):
    def __init__(self, message, violation=None):
        super().__init__(message)
        self.violation = violation


class ParseError(ValidationError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class CoefficientOutOfRange(ParseError):
    pass


class UnknownSubcommand(ValidationError):
    pass


class DegreeBoundViolated(TheoremViolation):
    pass


class RankBoundViolated(TheoremViolation):
    pass


class BoundViolated(TheoremViolation):
    pass


class ConvergenceFailure(TheoremViolation):
    pass


class DomainError(ValidationError):
    pass
