"""Custom exceptions for the hyperlat library.

This module defines all custom exceptions used throughout hyperlat. Every
exception carries an ``exit_code`` that the command-line interface maps to
its process exit status:

    1 -- a mathematical assertion failed (the theory says it cannot happen)
    2 -- the input was malformed or violated a precondition
    3 -- a configured iteration cap was exhausted
"""

from typing import Optional, Tuple


class HyperlatError(Exception):
    """Base exception for all hyperlat errors."""

    exit_code = 2


class InputError(HyperlatError):
    """Raised when an input file or argument cannot be parsed or cross-validated."""


class DimensionError(HyperlatError):
    """Raised when matrix or vector shapes do not fit the operation."""


class DegenerateFormError(HyperlatError):
    """Raised when a bilinear form is degenerate where a nondegenerate one is required."""


class NoSolutionError(HyperlatError):
    """Raised when a linear Diophantine equation has no integer solution."""


class NotMonicError(HyperlatError):
    """Raised when a polynomial operation requires a monic polynomial."""


class NotReciprocalError(HyperlatError):
    """Raised when a reciprocal (palindromic) polynomial of even degree is required."""


class LatticeMismatchError(HyperlatError):
    """Raised when vectors or matrices from different lattices are combined."""


class NotAnIsometryError(HyperlatError):
    """Raised when a matrix does not preserve a lattice's bilinear form.

    Attributes:
        entry: First violated entry as (row, col, expected, actual), if known.
    """

    def __init__(
        self,
        message: str,
        entry: Optional[Tuple[int, int, int, int]] = None
    ):
        super().__init__(message)
        self.entry = entry


class SingularEmbeddingError(HyperlatError):
    """Raised when a sublattice basis matrix is singular (not finite index)."""


class NotHyperbolicError(HyperlatError):
    """Raised when an operation needs a lattice of signature (1, rank - 1)."""


class NotPositiveError(HyperlatError):
    """Raised when a vector is required to have positive square."""


class NotSameConeError(HyperlatError):
    """Raised when two positive vectors lie in opposite positive cones."""


class NotInvertibleModError(HyperlatError):
    """Raised when a matrix is not invertible modulo n."""


class DoesNotDescendError(HyperlatError):
    """Raised when an isometry does not map a sublattice onto itself."""


class NotARootError(HyperlatError):
    """Raised when a vector used as a root does not have square -2."""


class CapExceededError(HyperlatError):
    """Raised when an iteration exceeds its configured cap."""

    exit_code = 3


class WalkDivergedError(CapExceededError):
    """Raised when a chamber walk hits its reflection cap."""


class SalemAssertionFailure(HyperlatError):
    """Raised when a Salem-degree statement guaranteed by the theory fails.

    Signals invalid input (for example a matrix that is not really an
    isometry of a hyperbolic form) or a software defect.
    """

    exit_code = 1


class ChamberViolationError(HyperlatError):
    """Raised when an isometry moves the chamber of the reference class."""

    exit_code = 1


class MalformedCertificateError(HyperlatError):
    """Raised when a certificate cannot be parsed or fails its schema."""


class DescentAssertionFailure(HyperlatError):
    """Raised when no power up to the quotient order descends to a sublattice.

    Any isometry congruent to the identity modulo the index preserves the
    sublattice, so this signals invalid input or a software defect.
    """

    exit_code = 1
