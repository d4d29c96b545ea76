"""Exception hierarchy shared across the toolkit.

Mathematical negatives (a class being nontrivial, an extension not
splitting) are *values*, never exceptions.  Exceptions signal misuse:
mismatched spaces, malformed input, or requests outside the supported
configuration.
"""


class Super3LieError(Exception):
    """Base class for all toolkit errors."""


class SpaceMismatch(Super3LieError):
    """Operands live over different superspaces or have wrong lengths."""


class ArityMismatch(Super3LieError):
    """A cochain was evaluated or combined at the wrong arity."""


class NotASubspace(Super3LieError):
    """Quotient requested for a pair that is not nested."""


class NotInSubspace(Super3LieError):
    """A vector expected to lie in a distinguished subspace does not."""


class DimensionCapExceeded(Super3LieError):
    """An O(n^5)-style verification was requested above the dimension cap."""


class LevelCapExceeded(Super3LieError):
    """A coboundary was requested above the configured cochain-arity cap."""


class NotACocycle(Super3LieError):
    """A cochain required to be closed under the coboundary is not."""


class InvalidAlgebra(Super3LieError):
    """An operation requires a verified 3-Lie superalgebra and got none."""


class InvalidRepresentation(Super3LieError):
    """An operation requires a verified representation and got none."""


class InvalidExtension(Super3LieError):
    """Extension data violates one of its structural invariants."""


class NotCompatible(Super3LieError):
    """A superderivation pair fails the compatibility identity."""


class NotExtensible(Super3LieError):
    """The obstruction class of a pair is nontrivial; no lift exists."""


class OddPairUnsupported(Super3LieError):
    """Lifting is implemented for even superderivation pairs only."""


class ParseError(Super3LieError):
    """An input file could not be interpreted."""


class LabelUnknown(ParseError):
    """A basis label referenced in a file does not resolve."""


class SkewInconsistent(ParseError):
    """Redundantly stated bracket entries contradict the skew symmetry."""
