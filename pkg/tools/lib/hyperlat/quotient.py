"""Isometries modulo n and their descent to finite-index sublattices.

If N ⊆ L has index n then nL ⊆ N, and every isometry of L acts on L/nL. An
isometry acting trivially there maps N onto itself, so the power
f^order_mod(f, n) always restricts to N. ``stabilizing_power`` finds the
least power that restricts.
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple

from hyperlat import config
from hyperlat.exact import IntMatrix, det
from hyperlat.exceptions import (
    CapExceededError,
    DescentAssertionFailure,
    DimensionError,
    DoesNotDescendError,
    InputError,
    LatticeMismatchError,
    NotInvertibleModError,
)
from hyperlat.lattice import Embedding, Isometry

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModMatrix:
    """Square integer matrix with entries reduced into [0, modulus).

    Attributes:
        modulus: n >= 2.
        matrix: The reduced entries.
        invertible: Whether gcd(det, n) == 1.
    """

    modulus: int
    matrix: IntMatrix
    invertible: bool

    def __matmul__(self, other: 'ModMatrix') -> 'ModMatrix':
        if self.modulus != other.modulus:
            raise DimensionError(f"Moduli {self.modulus} and {other.modulus} differ")
        return reduce_mod(self.matrix @ other.matrix, self.modulus)

    def is_identity(self) -> bool:
        return self.matrix.is_identity()

    def power(self, exponent: int) -> 'ModMatrix':
        result = reduce_mod(IntMatrix.identity(self.matrix.nrows), self.modulus)
        base = self
        while exponent:
            if exponent & 1:
                result = result @ base
            base = base @ base
            exponent >>= 1
        return result


def _reduce_entries(matrix: IntMatrix, modulus: int) -> IntMatrix:
    return IntMatrix.from_rows([x % modulus for x in row] for row in matrix.entries)


def reduce_mod(matrix: IntMatrix, modulus: int) -> ModMatrix:
    """Reduces M entrywise modulo n and records invertibility.

    Raises:
        InputError: If n < 2.
        DimensionError: If M is not square.
    """
    if modulus < 2:
        raise InputError(f"Modulus must be at least 2, got {modulus}")
    if not matrix.is_square:
        raise DimensionError("Only square matrices are reduced modulo n")
    reduced = _reduce_entries(matrix, modulus)
    invertible = math.gcd(det(reduced), modulus) == 1
    return ModMatrix(modulus, reduced, invertible)


def order_mod(matrix: IntMatrix, modulus: int, cap: int = config.DEFAULT_ORDER_CAP) -> int:
    """Least m >= 1 with M^m ≡ I (mod n).

    Args:
        matrix: Square integer matrix, invertible modulo n.
        modulus: n >= 2.
        cap: Largest order searched.

    Raises:
        NotInvertibleModError: If gcd(det M, n) > 1.
        CapExceededError: If no m <= cap works.
    """
    base = reduce_mod(matrix, modulus)
    if not base.invertible:
        raise NotInvertibleModError(
            f"det {det(matrix)} is not a unit modulo {modulus}"
        )
    current = base
    for m in range(1, cap + 1):
        if current.is_identity():
            logger.debug("Order of matrix modulo %d is %d", modulus, m)
            return m
        current = current @ base
    raise CapExceededError(f"Order modulo {modulus} exceeds cap {cap}")


def _check_owner(embedding: Embedding, f: Isometry) -> None:
    if f.lattice != embedding.ambient:
        raise LatticeMismatchError("Isometry does not act on the embedding's ambient lattice")


def _descends(embedding: Embedding, matrix: IntMatrix) -> bool:
    # B⁻¹XB is integral iff adj(B)·X·B ≡ 0 (mod det B).
    d = embedding.index
    if d == 1:
        return True
    product = embedding.adjugate_basis @ matrix @ embedding.basis
    return all(x % d == 0 for row in product.entries for x in row)


def descends_to(embedding: Embedding, f: Isometry) -> bool:
    """True iff f maps the sublattice onto itself (B⁻¹·f·B is integral)."""
    _check_owner(embedding, f)
    return _descends(embedding, f.matrix)


def restrict(embedding: Embedding, f: Isometry) -> Isometry:
    """The isometry B⁻¹·f·B of the sublattice.

    Raises:
        DoesNotDescendError: If f does not preserve the sublattice.
    """
    if not descends_to(embedding, f):
        raise DoesNotDescendError("Isometry does not preserve the sublattice")
    conjugated = (embedding.inverse_basis @ f.matrix @ embedding.basis).to_int_matrix()
    return Isometry(embedding.sublattice, conjugated)


@dataclass(frozen=True)
class StabilizingPower:
    """Least power of f preserving a sublattice.

    Attributes:
        m: The exponent.
        bound: order_mod(f, index), or 1 for index 1; m <= bound.
        power: f^m on the ambient lattice.
        restricted: f^m restricted to the sublattice.
    """

    m: int
    bound: int
    power: Isometry
    restricted: Isometry


def stabilizing_power(
    embedding: Embedding,
    f: Isometry,
    cap: int = config.DEFAULT_ORDER_CAP
) -> StabilizingPower:
    """Finds the least m >= 1 such that f^m descends, and restricts it.

    The search runs on matrices reduced modulo the index, since descent only
    depends on f^k mod det B; order_mod(f, index) bounds it.

    Raises:
        CapExceededError: If order_mod exceeds the cap.
        DescentAssertionFailure: If no power up to the bound descends.
    """
    _check_owner(embedding, f)
    n = embedding.index
    if n == 1:
        return StabilizingPower(1, 1, f, restrict(embedding, f))
    bound = order_mod(f.matrix, n, cap)
    base = _reduce_entries(f.matrix, n)
    current = base
    for k in range(1, bound + 1):
        if _descends(embedding, current):
            power = f.power(k)
            logger.info("f^%d preserves the index-%d sublattice (bound %d)", k, n, bound)
            return StabilizingPower(k, bound, power, restrict(embedding, power))
        current = _reduce_entries(current @ base, n)
    raise DescentAssertionFailure(
        f"No power of f up to its order {bound} modulo {n} preserves the sublattice"
    )


def descent_profile(
    embedding: Embedding,
    f: Isometry,
    upto: int
) -> Tuple[bool, ...]:
    """descends_to(E, f^k) for k = 1..upto, computed on reduced matrices."""
    _check_owner(embedding, f)
    if embedding.index == 1:
        return (True,) * upto
    base = _reduce_entries(f.matrix, embedding.index)
    current = base
    out = []
    for _ in range(upto):
        out.append(_descends(embedding, current))
        current = _reduce_entries(current @ base, embedding.index)
    return tuple(out)


def quotient_invariants(embedding: Embedding) -> Tuple[int, ...]:
    """Invariant factors of L/N other than 1."""
    return embedding.quotient_invariants
