"""Exception taxonomy shared by all modules.

The CLI maps these onto exit codes: ValidationError -> 2,
PrecisionError -> 3, HypothesisError -> 4.
"""


class AbelHeightError(Exception):
    """Base class for all library errors."""


class ValidationError(AbelHeightError, ValueError):
    """Malformed or out-of-domain input."""


class PrecisionError(AbelHeightError):
    """A numeric target could not be reached at the requested precision.

    Carries the radius (or tolerance) that was actually achieved, when known.
    """

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class DivisorProximityError(AbelHeightError):
    """A theta ball contains zero: the point is too close to the theta divisor."""


class HypothesisError(AbelHeightError):
    """A stated hypothesis of a bound is not satisfied by the input."""


class LemmaViolationError(AbelHeightError):
    """A fact the theory guarantees failed; indicates an upstream bug."""


class InternalConsistencyError(AbelHeightError):
    """An internal invariant failed (e.g. the duplication map vanished on the quartic)."""
