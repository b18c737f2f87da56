"""Exception types raised across the package.

All errors derive from :class:`GenResolventError` so callers can catch the
package's failures without also catching unrelated built-in errors.
"""

from __future__ import annotations


class GenResolventError(Exception):
    """Base class for every error raised by this package."""


class ShapeMismatchError(GenResolventError):
    """Operands have incompatible shapes or ambient dimensions."""


class FactorizationError(GenResolventError):
    """An iterative factorization kernel failed to converge."""


class SingularSystemError(GenResolventError):
    """A linear system matrix is singular to working tolerance."""

    def __init__(self, message: str, cond_estimate: float):
        super().__init__(message)
        self.cond_estimate = cond_estimate


class InvalidInverseError(GenResolventError):
    """A candidate inverse fails the inner or outer axiom."""


class InvalidComplementError(GenResolventError):
    """A pair of subspaces does not complement the kernel/range as required."""


class PerturbationTooLargeError(GenResolventError):
    """The perturbation exceeds the contraction bound ||T+||*||dT|| < 1."""

    def __init__(self, message: str, smallness: float):
        super().__init__(message)
        self.smallness = smallness


class OutOfRadiusError(GenResolventError):
    """An evaluation point lies outside the disk of convergence."""

    def __init__(self, message: str, growth: float):
        super().__init__(message)
        self.growth = growth


class InvalidFamilyError(GenResolventError):
    """A supplied inverse family member fails verification at some point."""

    def __init__(self, message: str, lam: complex):
        super().__init__(message)
        self.lam = lam


class MatrixFileError(GenResolventError):
    """A matrix file is missing, malformed, or violates its shape contract."""
