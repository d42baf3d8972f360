"""Exception hierarchy shared by the analysis modules."""


class UnsupportedInput(ValueError):
    """Input outside the range where the Torelli criterion applies."""


class NotSmoothError(UnsupportedInput):
    def __init__(self, msg="singular divisor: Theorem applies to smooth divisors only"):
        super().__init__(msg)


class PreconditionError(ValueError):
    """A documented precondition of an operation does not hold."""


class DegeneratePencil(PreconditionError):
    """Every member of the pencil has linearly dependent partials."""


class TransferDegenerate(PreconditionError):
    """The transfer matrix block that smoothness forces to be invertible is singular."""

    def __init__(self, msg, matrix=None):
        super().__init__(msg)
        self.matrix = matrix


class InternalConsistencyError(RuntimeError):
    """A certified identity failed to hold; indicates a bug, never bad input."""
