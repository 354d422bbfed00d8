"""Exception hierarchy.

Every error raised by the library derives from :class:`NoonsimError`; most
also derive from ``ValueError`` since they signal bad input.
"""


class NoonsimError(Exception):
    """Base class for all library errors."""


class BasisMismatchError(NoonsimError, ValueError):
    pass


class NonHermitianError(NoonsimError, ValueError):
    pass


class NonUnitaryError(NoonsimError, ValueError):
    pass


class NormalizationError(NoonsimError, ValueError):
    pass


class ExactSizeExceededError(NoonsimError, ValueError):
    """Dense construction requested beyond the supported size.

    Use the closed-form evaluators in :mod:`noonsim.metrology` instead.
    """


class DegeneratePhaseError(NoonsimError, ValueError):
    """The signal slope vanishes at the requested phase, so the phase
    uncertainty diverges."""


class InsufficientDataError(NoonsimError, ValueError):
    pass


class ConventionError(NoonsimError, ValueError):
    pass


class ResolutionError(NoonsimError, ValueError):
    pass


class SpanError(NoonsimError, ValueError):
    pass


class ContractViolation(NoonsimError, ArithmeticError):
    """A numerical contract (tolerance) was violated."""
