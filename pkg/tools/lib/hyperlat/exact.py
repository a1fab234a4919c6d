"""Exact integer and rational matrix kernel.

This module provides the immutable matrix types used throughout hyperlat and
the exact algorithms built on them: fraction-free determinants, Hermite and
Smith normal forms, a pivoted rational LDL decomposition and the solution of
linear Diophantine equations.

All arithmetic uses Python integers and ``fractions.Fraction``; nothing here
ever rounds.

Typical usage example:

    from hyperlat.exact import IntMatrix, det, hnf

    m = IntMatrix.from_rows([[2, 1], [0, 1]])
    h, u = hnf(m)
    assert u @ m == h
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from hyperlat.exceptions import (
    DegenerateFormError,
    DimensionError,
    NoSolutionError,
)

IntVector = Tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix with value semantics.

    Attributes:
        entries: Row-major tuple of rows; every row has the same length.
    """

    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        if not rows or not rows[0]:
            raise DimensionError("A matrix needs at least one row and one column")
        width = len(rows[0])
        for row in rows:
            if len(row) != width:
                raise DimensionError(
                    f"Ragged matrix: row lengths {len(row)} and {width} differ"
                )
        object.__setattr__(self, 'entries', rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> 'IntMatrix':
        """Builds a matrix from any iterable of integer rows."""
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> 'IntMatrix':
        """Builds a matrix whose columns are the given vectors."""
        return cls.from_rows(zip(*columns))

    @classmethod
    def identity(cls, n: int) -> 'IntMatrix':
        return cls.from_rows(
            [1 if i == j else 0 for j in range(n)] for i in range(n)
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> 'IntMatrix':
        return cls.from_rows([0] * cols for _ in range(rows))

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> 'IntMatrix':
        n = len(values)
        return cls.from_rows(
            [values[i] if i == j else 0 for j in range(n)] for i in range(n)
        )

    @classmethod
    def block_diagonal(cls, *blocks: 'IntMatrix') -> 'IntMatrix':
        """Returns the direct sum of square or rectangular blocks."""
        total_cols = sum(b.ncols for b in blocks)
        rows: List[List[int]] = []
        offset = 0
        for block in blocks:
            for row in block.entries:
                padded = [0] * total_cols
                padded[offset:offset + block.ncols] = row
                rows.append(padded)
            offset += block.ncols
        return cls.from_rows(rows)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> IntVector:
        return self.entries[i]

    def column(self, j: int) -> IntVector:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> List[IntVector]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> 'IntMatrix':
        return IntMatrix.from_rows(zip(*self.entries))

    def to_lists(self) -> List[List[int]]:
        return [list(row) for row in self.entries]

    def is_symmetric(self) -> bool:
        return self.is_square and self == self.transpose()

    def is_identity(self) -> bool:
        return self.is_square and self == IntMatrix.identity(self.nrows)

    def trace(self) -> int:
        self._require_square("trace")
        return sum(self.entries[i][i] for i in range(self.nrows))

    def apply(self, vector: Sequence[int]) -> IntVector:
        """Returns the matrix-vector product M·v."""
        if len(vector) != self.ncols:
            raise DimensionError(
                f"Vector of length {len(vector)} does not fit {self.nrows}x{self.ncols}"
            )
        return tuple(
            sum(a * b for a, b in zip(row, vector)) for row in self.entries
        )

    def __matmul__(self, other: 'IntMatrix') -> 'IntMatrix':
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise DimensionError(
                f"Cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
            )
        columns = list(zip(*other.entries))
        return IntMatrix.from_rows(
            [sum(a * b for a, b in zip(row, col)) for col in columns]
            for row in self.entries
        )

    def __mul__(self, scalar: int) -> 'IntMatrix':
        if not isinstance(scalar, int):
            return NotImplemented
        return IntMatrix.from_rows(
            [scalar * x for x in row] for row in self.entries
        )

    __rmul__ = __mul__

    def __add__(self, other: 'IntMatrix') -> 'IntMatrix':
        self._require_same_shape(other)
        return IntMatrix.from_rows(
            [a + b for a, b in zip(r, s)]
            for r, s in zip(self.entries, other.entries)
        )

    def __sub__(self, other: 'IntMatrix') -> 'IntMatrix':
        self._require_same_shape(other)
        return IntMatrix.from_rows(
            [a - b for a, b in zip(r, s)]
            for r, s in zip(self.entries, other.entries)
        )

    def __neg__(self) -> 'IntMatrix':
        return self * -1

    def power(self, exponent: int) -> 'IntMatrix':
        """Returns M^k by repeated squaring; negative k needs a unimodular M."""
        self._require_square("power")
        if exponent < 0:
            inverse_matrix = inverse(self)
            if not inverse_matrix.is_integral():
                raise DimensionError("Negative powers need a unimodular matrix")
            return inverse_matrix.to_int_matrix().power(-exponent)
        result = IntMatrix.identity(self.nrows)
        base = self
        while exponent:
            if exponent & 1:
                result = result @ base
            base = base @ base
            exponent >>= 1
        return result

    def _require_square(self, operation: str) -> None:
        if not self.is_square:
            raise DimensionError(
                f"{operation} needs a square matrix, got {self.nrows}x{self.ncols}"
            )

    def _require_same_shape(self, other: 'IntMatrix') -> None:
        if self.shape != other.shape:
            raise DimensionError(f"Shape mismatch: {self.shape} vs {other.shape}")

    def __str__(self) -> str:
        return '[' + ', '.join(str(list(row)) for row in self.entries) + ']'


@dataclass(frozen=True)
class RatMatrix:
    """Dense rational matrix; every entry is a normalized ``Fraction``.

    Attributes:
        entries: Row-major tuple of rows of fractions.
    """

    entries: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        if not rows or not rows[0]:
            raise DimensionError("A matrix needs at least one row and one column")
        if any(len(row) != len(rows[0]) for row in rows):
            raise DimensionError("Ragged rational matrix")
        object.__setattr__(self, 'entries', rows)

    @classmethod
    def from_int(cls, matrix: IntMatrix) -> 'RatMatrix':
        return cls(matrix.entries)

    @classmethod
    def identity(cls, n: int) -> 'RatMatrix':
        return cls.from_int(IntMatrix.identity(n))

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0])

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i][j]

    def transpose(self) -> 'RatMatrix':
        return RatMatrix(tuple(zip(*self.entries)))

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            other = RatMatrix.from_int(other)
        if not isinstance(other, RatMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise DimensionError("Rational matrix shapes do not chain")
        columns = list(zip(*other.entries))
        return RatMatrix(tuple(
            tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in columns)
            for row in self.entries
        ))

    def __rmatmul__(self, other):
        if isinstance(other, IntMatrix):
            return RatMatrix.from_int(other) @ self
        return NotImplemented

    def scale(self, factor) -> 'RatMatrix':
        return RatMatrix(tuple(
            tuple(factor * x for x in row) for row in self.entries
        ))

    def apply(self, vector: Sequence) -> Tuple[Fraction, ...]:
        return tuple(
            sum((a * b for a, b in zip(row, vector)), Fraction(0))
            for row in self.entries
        )

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.entries for x in row)

    def to_int_matrix(self) -> IntMatrix:
        """Converts to an integer matrix; fails if any entry is fractional."""
        if not self.is_integral():
            raise DimensionError("Rational matrix has non-integral entries")
        return IntMatrix.from_rows(
            [x.numerator for x in row] for row in self.entries
        )


@dataclass(frozen=True)
class LDLDecomposition:
    """Result of ``ldl``: ``Pᵀ·G·P = L·diag(D)·Lᵀ``.

    Attributes:
        lower: Unit lower-triangular rational factor L.
        diagonal: The pivots D.
        transform: Integer unimodular basis change P (a permutation unless a
            zero diagonal forced an ``e_i + e_j`` step).
    """

    lower: RatMatrix
    diagonal: Tuple[Fraction, ...]
    transform: IntMatrix

    @property
    def inertia(self) -> Tuple[int, int]:
        """Counts of positive and negative pivots (Sylvester's law)."""
        positive = sum(1 for d in self.diagonal if d > 0)
        negative = sum(1 for d in self.diagonal if d < 0)
        return positive, negative


@dataclass(frozen=True)
class DiophantineSolution:
    """All integer solutions of ``a·x = c``: ``particular + Σ kᵢ·basisᵢ``."""

    particular: IntVector
    basis: Tuple[IntVector, ...]

    def solution(self, multipliers: Sequence[int]) -> IntVector:
        """Returns the solution for the given basis multipliers."""
        if len(multipliers) != len(self.basis):
            raise DimensionError("One multiplier per basis vector is required")
        result = list(self.particular)
        for k, vector in zip(multipliers, self.basis):
            for i, x in enumerate(vector):
                result[i] += k * x
        return tuple(result)


def dot(u: Sequence, v: Sequence):
    """Euclidean dot product of two equal-length sequences."""
    if len(u) != len(v):
        raise DimensionError(f"Vector lengths {len(u)} and {len(v)} differ")
    return sum(a * b for a, b in zip(u, v))


def det(matrix: IntMatrix) -> int:
    """Computes the exact determinant by Bareiss fraction-free elimination.

    Args:
        matrix: Square integer matrix.

    Returns:
        The determinant.

    Raises:
        DimensionError: If the matrix is not square.
    """
    matrix._require_square("det")
    n = matrix.nrows
    m = matrix.to_lists()
    sign = 1
    previous_pivot = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Exact by Sylvester's identity.
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // previous_pivot
        previous_pivot = m[k][k]
    return sign * m[n - 1][n - 1]


def is_unimodular(matrix: IntMatrix) -> bool:
    return matrix.is_square and abs(det(matrix)) == 1


def inverse(matrix: IntMatrix) -> RatMatrix:
    """Inverts a nonsingular integer matrix over the rationals (Gauss-Jordan).

    Raises:
        DimensionError: If the matrix is not square.
        DegenerateFormError: If the matrix is singular.
    """
    matrix._require_square("inverse")
    n = matrix.nrows
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix.entries)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise DegenerateFormError("Matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return RatMatrix(tuple(tuple(row[n:]) for row in a))


def adjugate(matrix: IntMatrix) -> IntMatrix:
    """Returns adj(M) = det(M)·M⁻¹ for a nonsingular integer matrix."""
    d = det(matrix)
    if d == 0:
        raise DegenerateFormError("Adjugate requested for a singular matrix")
    return inverse(matrix).scale(d).to_int_matrix()


def _swap_rows(a: List[List[int]], i: int, j: int) -> None:
    a[i], a[j] = a[j], a[i]


def _add_row(a: List[List[int]], dst: int, src: int, factor: int) -> None:
    """Performs row[dst] += factor * row[src]."""
    if factor:
        a[dst] = [x + factor * y for x, y in zip(a[dst], a[src])]


def _swap_cols(a: List[List[int]], i: int, j: int) -> None:
    for row in a:
        row[i], row[j] = row[j], row[i]


def _add_col(a: List[List[int]], dst: int, src: int, factor: int) -> None:
    if factor:
        for row in a:
            row[dst] += factor * row[src]


def hnf(matrix: IntMatrix) -> Tuple[IntMatrix, IntMatrix]:
    """Computes the Hermite normal form H = U·M by integer row operations.

    Convention: this row-style form is the canonical one throughout the
    package. H is in row echelon form; each pivot is positive and every
    entry above a pivot lies in ``[0, pivot)``. Zero rows sit at the bottom.
    Texts that state the Hermite form column-wise (H = M·V with V unimodular,
    entries left of a pivot reduced) describe the transpose: the column form
    of M is ``hnf(M.transpose())[0].transpose()``. The algorithm is
    deterministic, so H and U are byte-stable.

    Args:
        matrix: Any integer matrix.

    Returns:
        Tuple (H, U) with U unimodular and H == U @ matrix.
    """
    h = matrix.to_lists()
    m, n = matrix.shape
    u = IntMatrix.identity(m).to_lists()
    pivot_row = 0
    for col in range(n):
        if pivot_row >= m:
            break
        while True:
            candidates = [i for i in range(pivot_row, m) if h[i][col] != 0]
            if not candidates:
                break
            best = min(candidates, key=lambda i: (abs(h[i][col]), i))
            _swap_rows(h, best, pivot_row)
            _swap_rows(u, best, pivot_row)
            cleared = True
            for i in range(pivot_row + 1, m):
                if h[i][col]:
                    q = h[i][col] // h[pivot_row][col]
                    _add_row(h, i, pivot_row, -q)
                    _add_row(u, i, pivot_row, -q)
                    if h[i][col]:
                        cleared = False
            if cleared:
                break
        if h[pivot_row][col] == 0:
            continue
        if h[pivot_row][col] < 0:
            h[pivot_row] = [-x for x in h[pivot_row]]
            u[pivot_row] = [-x for x in u[pivot_row]]
        pivot = h[pivot_row][col]
        for i in range(pivot_row):
            q = h[i][col] // pivot
            _add_row(h, i, pivot_row, -q)
            _add_row(u, i, pivot_row, -q)
        pivot_row += 1
    return IntMatrix.from_rows(h), IntMatrix.from_rows(u)


def snf(matrix: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Computes the Smith normal form S = U·M·V.

    Returns:
        Tuple (S, U, V): S diagonal with nonnegative entries, each dividing
        the next; U and V unimodular.
    """
    a = matrix.to_lists()
    m, n = matrix.shape
    u = IntMatrix.identity(m).to_lists()
    v = IntMatrix.identity(n).to_lists()
    for t in range(min(m, n)):
        while True:
            nonzero = [
                (abs(a[i][j]), i, j)
                for i in range(t, m) for j in range(t, n) if a[i][j]
            ]
            if not nonzero:
                break
            _, i, j = min(nonzero)
            _swap_rows(a, t, i)
            _swap_rows(u, t, i)
            _swap_cols(a, t, j)
            _swap_cols(v, t, j)
            pivot = a[t][t]
            for i in range(t + 1, m):
                q = a[i][t] // pivot
                _add_row(a, i, t, -q)
                _add_row(u, i, t, -q)
            for j in range(t + 1, n):
                q = a[t][j] // pivot
                _add_col(a, j, t, -q)
                _add_col(v, j, t, -q)
            if any(a[i][t] for i in range(t + 1, m)) or any(a[t][j] for j in range(t + 1, n)):
                continue
            offender = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % pivot),
                None,
            )
            if offender is None:
                break
            _add_row(a, t, offender, 1)
            _add_row(u, t, offender, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return IntMatrix.from_rows(a), IntMatrix.from_rows(u), IntMatrix.from_rows(v)


def invariant_factors(matrix: IntMatrix) -> Tuple[int, ...]:
    """Diagonal of the Smith normal form."""
    s, _, _ = snf(matrix)
    return tuple(s[i, i] for i in range(min(s.shape)))


def ldl(gram: IntMatrix) -> LDLDecomposition:
    """Computes a pivoted rational LDLᵀ decomposition of a symmetric form.

    Pivots are taken on the first nonzero diagonal entry of the remaining
    Schur complement. When the whole remaining diagonal vanishes but an
    off-diagonal entry ``(i, j)`` does not, the basis vector ``e_i`` is
    replaced by ``e_i + e_j``, which creates the nonzero pivot ``2·A[i][j]``.

    Args:
        gram: Symmetric nondegenerate integer matrix.

    Returns:
        LDLDecomposition with ``Pᵀ·G·P == L·diag(D)·Lᵀ``.

    Raises:
        DimensionError: If gram is not symmetric.
        DegenerateFormError: If gram is degenerate.
    """
    if not gram.is_symmetric():
        raise DimensionError("ldl needs a symmetric matrix")
    n = gram.nrows
    a = [[Fraction(x) for x in row] for row in gram.entries]
    p = IntMatrix.identity(n).to_lists()
    lower = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    diagonal: List[Fraction] = []
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][i] != 0), None)
        if pivot is None:
            pair = next(
                ((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0),
                None,
            )
            if pair is None:
                raise DegenerateFormError(
                    f"Degenerate form: trailing block of size {n - k} vanishes"
                )
            i, j = pair
            _add_col(p, i, j, 1)
            for c in range(k, n):
                a[i][c] += a[j][c]
            for r in range(k, n):
                a[r][i] += a[r][j]
            for c in range(k):
                lower[i][c] += lower[j][c]
            pivot = i
        if pivot != k:
            _swap_cols(p, k, pivot)
            a[k], a[pivot] = a[pivot], a[k]
            for row in a:
                row[k], row[pivot] = row[pivot], row[k]
            for c in range(k):
                lower[k][c], lower[pivot][c] = lower[pivot][c], lower[k][c]
        d = a[k][k]
        diagonal.append(d)
        for i in range(k + 1, n):
            lower[i][k] = a[i][k] / d
        for i in range(k + 1, n):
            factor = lower[i][k]
            if factor:
                for j in range(k + 1, n):
                    a[i][j] -= factor * a[k][j]
    return LDLDecomposition(
        lower=RatMatrix(tuple(tuple(row) for row in lower)),
        diagonal=tuple(diagonal),
        transform=IntMatrix.from_rows(p),
    )


def solve_linear_diophantine(
    coefficients: Sequence[int],
    target: int
) -> DiophantineSolution:
    """Parametrizes all integer x with ``a·x = c``.

    The Hermite form of the column vector a gives a unimodular U with
    ``U·a = (g, 0, ..., 0)`` where ``g = gcd(a)``; substituting ``x = Uᵀ·y``
    reduces the equation to ``g·y₀ = c``.

    Args:
        coefficients: Nonzero integer vector a.
        target: Right-hand side c.

    Returns:
        DiophantineSolution whose basis spans the integer kernel of a.

    Raises:
        DimensionError: If a is empty or zero.
        NoSolutionError: If gcd(a) does not divide c.
    """
    if not coefficients or not any(coefficients):
        raise DimensionError("Coefficient vector must be nonzero")
    column = IntMatrix.from_rows([x] for x in coefficients)
    h, u = hnf(column)
    g = h[0, 0]
    if target % g:
        raise NoSolutionError(f"gcd {g} does not divide {target}")
    scale = target // g
    particular = tuple(scale * x for x in u.row(0))
    basis = tuple(u.row(i) for i in range(1, u.nrows))
    return DiophantineSolution(particular=particular, basis=basis)


def is_zero_vector(vector: Optional[Sequence[int]]) -> bool:
    return vector is not None and not any(vector)
