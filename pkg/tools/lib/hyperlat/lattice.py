"""Integral lattices, their vectors, isometries and finite-index sublattices.

A lattice is an integer Gram matrix of a nondegenerate symmetric bilinear
form. Vectors, isometries and embeddings remember the lattice they belong to
so that pairing data from two different lattices is an error.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence, Tuple, Union

from hyperlat.exact import IntMatrix, RatMatrix, adjugate, det, dot, inverse, invariant_factors
from hyperlat.exceptions import (
    DegenerateFormError,
    DimensionError,
    LatticeMismatchError,
    NotAnIsometryError,
    NotHyperbolicError,
    NotPositiveError,
    SingularEmbeddingError,
)
from hyperlat.polynomial import NEG_INFINITY, POS_INFINITY, charpoly, count_roots

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LatticeVector:
    """Integer coordinates in the basis of the lattice labelled ``owner``."""

    coords: Tuple[int, ...]
    owner: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, 'coords', tuple(int(c) for c in self.coords))

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __neg__(self) -> 'LatticeVector':
        return LatticeVector(tuple(-c for c in self.coords), self.owner)

    def scaled(self, factor: int) -> 'LatticeVector':
        return LatticeVector(tuple(factor * c for c in self.coords), self.owner)


VectorLike = Union[LatticeVector, Sequence[int]]


@dataclass(frozen=True)
class Lattice:
    """A nondegenerate integral lattice given by its Gram matrix.

    Attributes:
        gram: Symmetric integer matrix with nonzero determinant.
        label: Optional name; vectors created by this lattice carry it.
    """

    gram: IntMatrix
    label: Optional[str] = None

    def __post_init__(self):
        if not self.gram.is_symmetric():
            raise DimensionError(f"Gram matrix of {self.label or 'lattice'} is not symmetric")
        if self.determinant == 0:
            raise DegenerateFormError(f"Gram matrix of {self.label or 'lattice'} is degenerate")

    @classmethod
    def from_rows(cls, rows, label: Optional[str] = None) -> 'Lattice':
        return cls(IntMatrix.from_rows(rows), label)

    @property
    def rank(self) -> int:
        return self.gram.nrows

    @cached_property
    def determinant(self) -> int:
        return det(self.gram)

    @cached_property
    def signature(self) -> Tuple[int, int]:
        return signature(self)

    def is_hyperbolic(self) -> bool:
        return self.signature == (1, self.rank - 1)

    def is_even(self) -> bool:
        return is_even(self)

    def vector(self, coords: Sequence[int]) -> LatticeVector:
        """Wraps coordinates as a vector of this lattice."""
        if len(coords) != self.rank:
            raise DimensionError(
                f"Vector of length {len(coords)} in a rank-{self.rank} lattice"
            )
        return LatticeVector(tuple(coords), self.label)

    def coerce(self, v: VectorLike) -> LatticeVector:
        """Accepts raw coordinates or a vector of this lattice."""
        if isinstance(v, LatticeVector):
            if v.owner != self.label:
                raise LatticeMismatchError(
                    f"Vector of lattice {v.owner!r} used in lattice {self.label!r}"
                )
            if len(v) != self.rank:
                raise DimensionError(
                    f"Vector of length {len(v)} in a rank-{self.rank} lattice"
                )
            return v
        return self.vector(tuple(v))

    def inner(self, v: VectorLike, w: VectorLike) -> int:
        return inner(self, v, w)

    def norm(self, v: VectorLike) -> int:
        """The square v·v."""
        return inner(self, v, v)

    def pairing_vector(self, v: VectorLike) -> Tuple[int, ...]:
        """G·v, so that x·v = dot(x, G·v)."""
        return self.gram.apply(self.coerce(v).coords)

    def relabel(self, label: Optional[str]) -> 'Lattice':
        return Lattice(self.gram, label)

    def scaled(self, factor: int, label: Optional[str] = None) -> 'Lattice':
        """The lattice L(factor) with Gram matrix factor·G."""
        return Lattice(self.gram * factor, label)

    def direct_sum(self, other: 'Lattice', label: Optional[str] = None) -> 'Lattice':
        return Lattice(IntMatrix.block_diagonal(self.gram, other.gram), label)


def inner(lattice: Lattice, v: VectorLike, w: VectorLike) -> int:
    """Returns vᵀ·G·w.

    Raises:
        DimensionError: If a vector has the wrong length.
        LatticeMismatchError: If a vector belongs to another lattice.
    """
    v = lattice.coerce(v)
    w = lattice.coerce(w)
    return dot(v.coords, lattice.gram.apply(w.coords))


def signature(lattice: Lattice) -> Tuple[int, int]:
    """Exact inertia (n_plus, n_minus) of the Gram matrix.

    All eigenvalues of a symmetric matrix are real, so Sturm counts of the
    characteristic polynomial on both half-lines, with multiplicity, give the
    numbers of positive and negative eigenvalues.
    """
    if lattice.determinant == 0:
        raise DegenerateFormError("Signature of a degenerate form")
    chi = charpoly(lattice.gram)
    positive = count_roots(chi, 0, POS_INFINITY, multiplicity=True)
    negative = count_roots(chi, NEG_INFINITY, 0, include_b=False, multiplicity=True)
    if positive + negative != lattice.rank:
        raise DegenerateFormError(
            f"Eigenvalue counts {positive}+{negative} do not add up to rank {lattice.rank}"
        )
    return positive, negative


def is_even(lattice: Lattice) -> bool:
    """True iff every diagonal Gram entry is even."""
    return all(lattice.gram[i, i] % 2 == 0 for i in range(lattice.rank))


def warn_if_odd(lattice: Lattice) -> None:
    if not is_even(lattice):
        logger.warning("Lattice %s is not even", lattice.label or '<unnamed>')


@dataclass(frozen=True)
class Isometry:
    """An integer matrix preserving a lattice's form; checked on construction.

    Attributes:
        lattice: The lattice whose form is preserved.
        matrix: M with Mᵀ·G·M = G.
    """

    lattice: Lattice
    matrix: IntMatrix

    def __post_init__(self):
        _check_isometry(self.lattice, self.matrix)

    @classmethod
    def identity(cls, lattice: Lattice) -> 'Isometry':
        return cls(lattice, IntMatrix.identity(lattice.rank))

    def apply(self, v: VectorLike) -> LatticeVector:
        v = self.lattice.coerce(v)
        return self.lattice.vector(self.matrix.apply(v.coords))

    def compose(self, other: 'Isometry') -> 'Isometry':
        """Returns self ∘ other."""
        if other.lattice != self.lattice:
            raise LatticeMismatchError("Composing isometries of different lattices")
        return Isometry(self.lattice, self.matrix @ other.matrix)

    def power(self, exponent: int) -> 'Isometry':
        return Isometry(self.lattice, self.matrix.power(exponent))

    def inverse(self) -> 'Isometry':
        return self.power(-1)


def _check_isometry(lattice: Lattice, matrix: IntMatrix) -> None:
    if matrix.shape != (lattice.rank, lattice.rank):
        raise DimensionError(
            f"Matrix of shape {matrix.shape} cannot act on a rank-{lattice.rank} lattice"
        )
    image = matrix.transpose() @ lattice.gram @ matrix
    for i in range(lattice.rank):
        for j in range(lattice.rank):
            expected, actual = lattice.gram[i, j], image[i, j]
            if expected != actual:
                raise NotAnIsometryError(
                    f"MᵀGM differs from G at ({i}, {j}): expected {expected}, got {actual}",
                    entry=(i, j, expected, actual),
                )
    if abs(det(matrix)) != 1:
        raise NotAnIsometryError(f"Isometry has determinant {det(matrix)}")


def verify_isometry(lattice: Lattice, matrix: IntMatrix) -> Isometry:
    """Validates M as an isometry of the lattice.

    Raises:
        NotAnIsometryError: With the first violated entry of MᵀGM = G.
    """
    return Isometry(lattice, matrix)


@dataclass(frozen=True)
class Embedding:
    """A same-rank sublattice N ⊆ L given by basis columns in L-coordinates.

    Attributes:
        ambient: The lattice L.
        basis: Square matrix B whose columns span N.
        label: Optional label of the sublattice N.
    """

    ambient: Lattice
    basis: IntMatrix
    label: Optional[str] = None
    sublattice: Lattice = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.basis.shape != (self.ambient.rank, self.ambient.rank):
            raise DimensionError(
                f"Embedding basis of shape {self.basis.shape} for a rank-{self.ambient.rank} lattice"
            )
        if det(self.basis) == 0:
            raise SingularEmbeddingError("Embedding basis is singular; the sublattice has lower rank")
        label = self.label or f"{self.ambient.label or 'L'}/sub"
        sub_gram = self.basis.transpose() @ self.ambient.gram @ self.basis
        object.__setattr__(self, 'sublattice', Lattice(sub_gram, label))

    @property
    def sub_gram(self) -> IntMatrix:
        return self.sublattice.gram

    @cached_property
    def index(self) -> int:
        """[L : N] = |det B|."""
        return abs(det(self.basis))

    @cached_property
    def inverse_basis(self) -> RatMatrix:
        return inverse(self.basis)

    @cached_property
    def adjugate_basis(self) -> IntMatrix:
        return adjugate(self.basis)

    @cached_property
    def quotient_invariants(self) -> Tuple[int, ...]:
        """Invariant factors of L/N greater than one."""
        return tuple(d for d in invariant_factors(self.basis) if d != 1)

    def to_sub_coords(self, v: VectorLike) -> Tuple[Fraction, ...]:
        """Rational N-coordinates B⁻¹·v of an ambient vector."""
        v = self.ambient.coerce(v)
        return self.inverse_basis.apply(v.coords)

    def to_ambient(self, u: VectorLike) -> LatticeVector:
        """Ambient coordinates B·u of a sublattice vector."""
        u = self.sublattice.coerce(u)
        return self.ambient.vector(self.basis.apply(u.coords))


def make_embedding(
    lattice: Lattice,
    basis: IntMatrix,
    label: Optional[str] = None
) -> Embedding:
    """Builds the finite-index sublattice spanned by the columns of B.

    Raises:
        SingularEmbeddingError: If det B = 0.
    """
    return Embedding(lattice, basis, label)


def require_hyperbolic(lattice: Lattice) -> None:
    if not lattice.is_hyperbolic():
        raise NotHyperbolicError(
            f"Lattice {lattice.label or '<unnamed>'} has signature {lattice.signature}, "
            f"not (1, {lattice.rank - 1})"
        )


def require_positive(lattice: Lattice, v: VectorLike, name: str = 'vector') -> LatticeVector:
    v = lattice.coerce(v)
    square = lattice.norm(v)
    if square <= 0:
        raise NotPositiveError(f"{name} {list(v.coords)} has square {square} <= 0")
    return v


def same_positive_cone(lattice: Lattice, v: VectorLike, w: VectorLike) -> bool:
    """True iff positive vectors v and w lie in the same cone component.

    In signature (1, n) the positive vectors form two cones and v·w > 0
    exactly when v and w share one.

    Raises:
        NotHyperbolicError: If the signature is not (1, rank - 1).
        NotPositiveError: If v² <= 0 or w² <= 0.
    """
    require_hyperbolic(lattice)
    v = require_positive(lattice, v)
    w = require_positive(lattice, w)
    return inner(lattice, v, w) > 0
