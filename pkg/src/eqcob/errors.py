"""Exception hierarchy.

Every error raised by the engine derives from :class:`EqcobError`, so callers
(and the CLI) can catch one type and still report which precondition failed.
"""


class EqcobError(ValueError):
    """Base class for all engine errors."""


class StructuralError(EqcobError):
    """Operands disagree on ring, variables or truncation."""


class GradingError(EqcobError):
    """An input violates a degree/homogeneity requirement."""


class CompositionError(EqcobError):
    """A substituted series has a nonzero constant term (or too low order)."""


class ReversionError(EqcobError):
    """Compositional inverse requested for a series whose linear term is not a unit."""


class ReciprocalError(EqcobError):
    """Multiplicative inverse requested for a series whose constant term is not a unit."""


class TwistingError(EqcobError):
    """The leading twisting coefficient is not a unit."""


class StrategyError(EqcobError):
    """A normal-form strategy was applied to relations it cannot handle."""


class TruncationError(EqcobError):
    """A degree beyond the truncation bound was requested."""


class SymmetryError(EqcobError):
    """A polynomial expected to be symmetric is not.

    ``witness`` holds the offending adjacent transposition ``(i, i + 1)``.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ArgumentError(EqcobError):
    """An integer argument is out of its allowed range."""


class StabilizationInconclusive(EqcobError):
    """The tower is too short to certify stabilization in the requested degree."""

    def __init__(self, message, degree=None, stages=None):
        super().__init__(message)
        self.degree = degree
        self.stages = stages
