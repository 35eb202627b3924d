"""Exception hierarchy shared by every module of the package."""


class RelDynError(Exception):
    """Base class for all package errors."""


class DivisionByZero(RelDynError, ZeroDivisionError):
    pass


class NegativeRadicand(RelDynError, ValueError):
    pass


class DimensionMismatch(RelDynError, ValueError):
    pass


class DimensionTooLow(RelDynError, ValueError):
    pass


class DegeneratePair(RelDynError, ValueError):
    pass


class EmptyInput(RelDynError, ValueError):
    pass


class SingularMap(RelDynError, ValueError):
    pass


class SpeedNotSubluminal(RelDynError, ValueError):
    pass


class NonpositiveMass(RelDynError, ValueError):
    pass


class NoMedianNeeded(RelDynError, ValueError):
    pass


class UnknownId(RelDynError, KeyError):
    pass


class UnknownObserver(UnknownId):
    pass


class NonInertialBody(RelDynError, ValueError):
    pass


class PreconditionViolation(RelDynError, ValueError):
    pass


class UnknownAxiomName(RelDynError, KeyError):
    pass


class ParseError(RelDynError, ValueError):
    """Malformed scenario file or quantity literal.

    ``line`` and ``column`` are 1-based when known.
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        super().__init__(message + where)


class ValidationError(RelDynError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        lines = ", ".join(str(v) for v in self.violations)
        super().__init__(f"scenario failed validation: {lines}")
