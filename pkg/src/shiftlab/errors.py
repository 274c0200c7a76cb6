"""Exception types shared across the toolkit.

Numerical failures get their own classes so callers (and the CLI exit-code
taxonomy) can tell them apart from plain usage errors, which stay ValueError.
"""


class ShiftlabError(Exception):
    """Base class for numerical failures raised by this package."""


class VanishingSymbol(ShiftlabError):
    """The sampled symbol came too close to zero for a winding number."""


class NonConvergent(ShiftlabError):
    """Adaptive refinement exceeded its sample budget."""


class RoundingAmbiguous(ShiftlabError):
    """Accumulated argument sum is not close enough to an integer multiple of 2*pi."""


class NonConvergence(ShiftlabError):
    """Dense eigensolver failed; the offending matrix is attached."""

    def __init__(self, message, matrix=None):
        super().__init__(message)
        self.matrix = matrix


class TheoremViolation(ShiftlabError):
    """Witness verification left zero witnesses.

    Existence of a singularity witness is guaranteed, so an empty verified
    set always signals a numerical failure, never a legitimate result.
    """


class RootOnCircle(ShiftlabError):
    """A symbol root sits on (or too close to) the unit circle."""


class NotFredholm(ShiftlabError):
    """The operator is not Fredholm (a symbol root lies on the unit circle)."""
