"""Exception hierarchy for hermforms.

Every failure mode that callers are expected to handle gets its own class so
that library users (and the CLI) can dispatch on the type rather than parse
messages.  ``HermformsError`` is the common base.
"""

from __future__ import annotations


class HermformsError(Exception):
    """Base class for all errors raised by this package."""


class InvalidScalar(HermformsError):
    """A scalar value is malformed (zero denominator, bad field, ...)."""


class InvalidEntry(HermformsError):
    """A serialized matrix / form / algebra entry cannot be parsed."""


class InvalidPlace(HermformsError):
    """A place argument is not 'inf' and not a prime."""


class SingularUnit(HermformsError):
    """An element required to be invertible is not."""


class NotAnInvolution(HermformsError):
    """The requested involution data does not square to the identity
    or does not restrict correctly to the center."""


class UnsupportedCombination(HermformsError):
    """The algebra descriptor combines options that are out of scope
    (for example quaternion coefficients over a quadratic etale center)."""


class NotHermitian(HermformsError):
    """A Gram matrix violates the epsilon-hermitian symmetry."""


class AlgebraMismatch(HermformsError):
    """Two operands live over different algebras with involution."""


class SingularForm(HermformsError):
    """A nonsingular form was required."""


class ScaleFirst(HermformsError):
    """The operation needs the canonical involution; scale the form first."""


class UseSkewPath(HermformsError):
    """The operation only handles epsilon = +1; route epsilon = -1 through
    a skew unit scaling."""


class SearchBudgetExceeded(HermformsError):
    """A bounded search (skew units, maximal elements, pivots) ran out of
    candidates."""


class NilOrdering(HermformsError):
    """The ordering is nil for this algebra with involution."""


class NotNil(HermformsError):
    """The ordering is not nil for this algebra with involution."""


class NotMaximal(HermformsError):
    """The supplied element does not have maximal signature at the ordering."""


class NotDiagonalizable(HermformsError):
    """The form admits no diagonalization (alternating case)."""


class SplitCenter(HermformsError):
    """The center is split, so the hermitian Witt group is trivial."""


class UnsupportedBase(HermformsError):
    """The base ring is outside the decidable scope of the operation."""


class InternalError(HermformsError):
    """An internal invariant was breached; indicates a bug."""
