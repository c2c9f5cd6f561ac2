"""Exception hierarchy shared by all zetalab modules."""


class ZetaLabError(Exception):
    """Base class for every error raised by zetalab."""


class PreconditionError(ZetaLabError, ValueError):
    """An argument violates an operation's documented precondition."""


class DomainError(PreconditionError):
    """Evaluation requested too close to a singularity or outside the supported domain."""


class CapacityError(ZetaLabError, MemoryError):
    """A desk-scale resource guard was exceeded."""


class NumericalFailure(ZetaLabError, ArithmeticError):
    """An iterative or refinement-checked computation did not converge."""


class FitError(ZetaLabError, ValueError):
    """Least-squares exponent fit is ill-posed for the given points."""
