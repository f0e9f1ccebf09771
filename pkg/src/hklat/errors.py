"""Exception types shared across the package.

Every domain-level failure raises a subclass of DomainError, so callers
(and the command line driver) can tell bad mathematical input, which is
reported by error name, apart from I/O and schema problems.
"""

from __future__ import annotations


class DomainError(Exception):
    """Base class for all domain-level failures."""


class NonSymmetricError(DomainError):
    """Gram matrix is not symmetric."""


class DegenerateFormError(DomainError):
    """Gram matrix has determinant zero."""


class FrameError(DomainError):
    """A vector arrived in the wrong frame (primal vs dual)."""


class ShapeError(DomainError):
    """Dimension mismatch, or a matrix is not square."""


class NonIntegralError(DomainError):
    """An operation required integer coordinates."""


class ZeroVectorError(DomainError):
    """The zero vector is not admissible here."""


class IsotropicClassError(DomainError):
    """Reflection mirror has self-pairing zero."""


class NonNegativeSquareError(DomainError):
    """An operation required a class of negative self-pairing."""


class InvalidContextError(DomainError):
    """A cone context violates one of its construction invariants."""


class OutsidePositiveConeError(DomainError):
    """The query vector is not in the positive cone."""


class OnWallError(DomainError):
    """The query vector lies on a wall; carries the wall index."""

    def __init__(self, message: str, wall_index: int):
        super().__init__(message)
        self.wall_index = wall_index


class NotPseudoEffectiveError(DomainError):
    """No decomposition relative to the supplied prime classes."""


class InconsistentPrimeSetError(DomainError):
    """The decomposition system produced a negative coefficient."""


class AmbiguousSupportError(DomainError):
    """The negative part has no unique expression over the primes."""


class SingularSystemError(DomainError):
    """Exact linear solve hit a singular matrix."""


class InvalidQueryError(DomainError):
    """Scalar argument outside its admissible range."""


class DegenerateDimensionError(DomainError):
    """Moduli dimension formula returned a nonpositive value."""


class BoundOverflowError(DomainError):
    """Even the logarithmic representation exceeded exponent limits."""


class UnknownLabelError(DomainError):
    """Row or center label not present in the table."""


class EmptyCenterError(DomainError):
    """No rows attached to the requested center."""


class InvalidPosetError(DomainError):
    """Containment relation is not a partial order."""
