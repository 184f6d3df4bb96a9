"""Exception hierarchy.

Every error raised on bad input derives from :class:`KLRelaxError`, so the
CLI can catch one type and report the concrete class name.
"""


class KLRelaxError(Exception):
    pass


class EmptyBases(KLRelaxError):
    pass


class UnequalBasisSizes(KLRelaxError):
    pass


class ExchangeAxiomViolation(KLRelaxError):
    def __init__(self, b1, b2, a, message=None):
        self.b1, self.b2, self.a = b1, b2, a
        super().__init__(message or f"basis exchange fails for B1={b1}, B2={b2}, a={a}")


class GroundSetTooLarge(KLRelaxError):
    pass


class GroundSetTooLargeForTutte(KLRelaxError):
    pass


class ElementOutOfRange(KLRelaxError):
    pass


class ParameterOutOfRange(KLRelaxError, ValueError):
    pass


class NotAFlat(KLRelaxError):
    pass


class NotACircuitHyperplane(KLRelaxError):
    pass


class NotAFreeBasis(KLRelaxError):
    pass


class IntersectionTooLarge(KLRelaxError):
    pass


class FlatCountOverflow(KLRelaxError):
    pass


class DegreeExceedsK(KLRelaxError, ValueError):
    pass


class NonIntegralCoefficient(KLRelaxError, ArithmeticError):
    pass


class SelfCheckFailed(KLRelaxError, AssertionError):
    pass


class InputFormatError(KLRelaxError):
    pass
