"""Exception taxonomy for numerical failures."""


class VgprodError(Exception):
    """Base class for all library-specific errors."""


class DomainError(VgprodError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class SingularityError(DomainError):
    """Evaluation requested exactly at a non-removable singularity."""


class OverflowEvalError(VgprodError, ArithmeticError):
    """The result (or a mandatory intermediate) overflows double precision."""


class ConvergenceError(VgprodError, ArithmeticError):
    """An iterative evaluation failed to reach the requested tolerance."""


class RegimeError(ConvergenceError):
    """The requested point lies outside the regime this evaluator serves.

    The caller should switch to the asymptotic (or another) regime rather
    than accept a poisoned value.
    """
