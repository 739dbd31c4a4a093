"""Exception types shared across the package."""


class MismatchedDiscriminant(ValueError):
    """Two quadratic scalars from different extensions were combined."""


class NotInvertible(ZeroDivisionError):
    pass


class NotRational(ValueError):
    """A scalar with nonzero irrational part was asked for its rational value."""


class IndexUndefined(LookupError):
    def __init__(self, index, reason="undefined"):
        super().__init__(f"index {index} is {reason}")
        self.index = index


class SequenceZeroDivision(ZeroDivisionError):
    """Every available recurrence divides by zero when producing ``index``."""

    def __init__(self, index):
        super().__init__(f"cannot produce term {index}: every recurrence divides by zero")
        self.index = index


class IndeterminateQuotient(ArithmeticError):
    pass


class DegenerateWindow(ValueError):
    pass


class NonConstantInvariants(ValueError):
    pass


class DegenerateFit(ValueError):
    pass


class RelationMismatch(ValueError):
    """A fitted relation does not hold on the rest of the sequence."""


class NotSomos4(RelationMismatch):
    pass


class NonRationalCoefficient(ArithmeticError):
    pass


class NotIntegral(ValueError):
    pass


class PointNotOnCurve(ValueError):
    pass


class InfiniteE(ArithmeticError):
    def __init__(self, index):
        super().__init__(f"e_{index} is infinite")
        self.index = index


class RelationVerificationFailed(ArithmeticError):
    def __init__(self, relation, report):
        super().__init__(f"relation {relation} fails at h = {report.first_failure}")
        self.relation = relation
        self.report = report
