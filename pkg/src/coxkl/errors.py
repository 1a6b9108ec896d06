"""Exception taxonomy shared across the package.

``DomainError`` covers failures of mathematical preconditions.  The CLI
maps it to exit code 3, reserving exit code 2 for usage problems.
"""


class DomainError(Exception):
    """A mathematically meaningful precondition failed."""


class InfiniteTypeError(DomainError):
    """The Coxeter datum is not of finite type."""


class UnsupportedSystemError(DomainError):
    """The operation needs a system flavour we do not provide (e.g. H3/H4,
    or crystallographic-only operations on a dihedral system)."""


class OwnerMismatchError(DomainError):
    """Elements (or weights) from different Coxeter systems were mixed."""


class NotDominantError(DomainError):
    """The weight fails the dominance condition required here."""


class ParityError(DomainError):
    """An exponent violates a parity or bound constraint."""


class DescentError(DomainError):
    """A generator sits on the wrong side of a descent."""


class NegativeCoefficientError(DomainError):
    """A coefficient that must be non-negative is not."""


class InsufficientTruncationError(DomainError):
    """A truncated power series computation cannot certify its answer at
    the working truncation order."""


class RankDeficientError(DomainError):
    """A matrix expected to have full row rank does not."""
