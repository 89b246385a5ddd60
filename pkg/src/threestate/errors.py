"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`ThreeStateError`, so callers (the CLI in particular) can separate
validation problems from numerical breakdown.
"""

__all__ = [
    "ThreeStateError",
    "ValidationError",
    "NumericalError",
    "NonPositiveDelta",
    "AlreadyRescaled",
    "NotRescaled",
    "NegativeDiscriminant",
    "DegenerateOccupancy",
    "DomainError",
    "PoleInDenominator",
    "NoConvergence",
    "BranchUndefined",
    "DegenerateParameters",
    "EvaluationFailure",
    "NegativeProbability",
    "TruncationFailure",
    "SimulationRunaway",
    "SingularSystem",
]


class ThreeStateError(Exception):
    """Base class for all package errors."""


class ValidationError(ThreeStateError, ValueError):
    """Bad input: negative rates, wrong units, malformed parameters."""


class NumericalError(ThreeStateError, ArithmeticError):
    """A computation broke down or could not reach its accuracy target."""


# model-core
class NonPositiveDelta(ValidationError):
    pass


class AlreadyRescaled(ValidationError):
    pass


class NotRescaled(ValidationError):
    pass


class NegativeDiscriminant(NumericalError):
    pass


class DegenerateOccupancy(ValidationError):
    pass


# hypergeom
class DomainError(ValidationError):
    pass


class PoleInDenominator(ValidationError):
    pass


class NoConvergence(NumericalError):
    pass


class BranchUndefined(NumericalError):
    pass


class DegenerateParameters(NumericalError):
    pass


# distribution
class EvaluationFailure(NumericalError):
    pass


class NegativeProbability(NumericalError):
    pass


class TruncationFailure(NumericalError):
    pass


# oracle
class SimulationRunaway(NumericalError):
    pass


class SingularSystem(NumericalError):
    pass
