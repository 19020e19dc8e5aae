"""Exception hierarchy.

Every error raised on a violated precondition derives from EllcoverError so
the command line layer can map domain failures to a single exit code.
"""

from __future__ import annotations


class EllcoverError(Exception):
    """Base class for all domain errors raised by this package."""


class NotPrime(EllcoverError):
    """A characteristic argument was not a prime number."""


class NotPrimePower(EllcoverError):
    """A field-order argument was not a prime power."""


class TooLarge(EllcoverError):
    """A requested field order exceeds the table-construction cap."""


class CtxMismatch(EllcoverError):
    """Operands live in different field contexts (or an invalid tower)."""


class ZeroInput(EllcoverError):
    """An argument required to be nonzero was zero."""


class OrderMismatch(EllcoverError):
    """The unit group has no character of the requested order."""


class ZeroPolynomial(EllcoverError):
    """The zero polynomial was passed where a nonzero one is required."""


class BudgetExceeded(EllcoverError):
    """An enumeration or truncation bound beyond the configured cap."""


class NotASubfield(EllcoverError):
    """The target context does not contain the source field."""


class KummerRegime(EllcoverError):
    """q is congruent to 1 mod ell: the classical Kummer case is out of scope."""


class CharacteristicDividesEll(EllcoverError):
    """ell equals the field characteristic; the cover degenerates."""


class InvalidTuple(EllcoverError):
    """A branch tuple violates the squarefree/coprime/degree constraints."""


class EmptyStratum(EllcoverError):
    """No cover exists with the requested invariants."""


class UnexpectedRoot(EllcoverError):
    """A twisted polynomial vanished at a rational point; unreachable in
    the supported regime and always a usage or internal error."""


class TrivialCharacter(EllcoverError):
    """The all-zero exponent vector defines no primitive character."""


class CrossCheckMismatch(EllcoverError):
    """Two independent computations of the same quantity disagree."""


class SupportMismatch(EllcoverError):
    """Two distributions live on different point-count lattices."""


class DegenerateZeroPolynomial(EllcoverError):
    """Root extraction was asked for the zero polynomial."""
