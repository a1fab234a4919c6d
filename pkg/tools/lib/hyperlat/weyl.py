"""Roots, reflections and chamber walks in hyperbolic lattices.

Roots are the vectors of square -2. Their orthogonal hyperplanes cut the
positive cone into chambers, and the reflections in them generate the Weyl
group, which permutes the chambers transitively. Everything here is exact:
root sets are enumerated completely by reducing to a positive definite form
on the orthogonal complement of a positive vector.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from hyperlat import config
from hyperlat.exact import IntMatrix, dot, inverse, ldl, solve_linear_diophantine
from hyperlat.exceptions import (
    NoSolutionError,
    NotARootError,
    NotSameConeError,
    WalkDivergedError,
)
from hyperlat.lattice import (
    Lattice,
    LatticeVector,
    VectorLike,
    inner,
    require_hyperbolic,
    require_positive,
)

logger = logging.getLogger(__name__)

ROOT_NORM = -2


@dataclass(frozen=True)
class Root:
    """A lattice vector of square -2."""

    lattice: Lattice
    vector: LatticeVector

    def __post_init__(self):
        vector = self.lattice.coerce(self.vector)
        object.__setattr__(self, 'vector', vector)
        square = inner(self.lattice, vector, vector)
        if square != ROOT_NORM:
            raise NotARootError(f"{list(vector.coords)} has square {square}, not -2")

    @classmethod
    def of(cls, lattice: Lattice, coords: Sequence[int]) -> 'Root':
        return cls(lattice, lattice.vector(tuple(coords)))

    @property
    def coords(self) -> Tuple[int, ...]:
        return self.vector.coords


@dataclass(frozen=True)
class WeylWord:
    """Reflections applied left to right: roots[0] first."""

    lattice: Lattice
    roots: Tuple[Root, ...] = ()

    def __len__(self) -> int:
        return len(self.roots)

    def apply(self, v: VectorLike) -> LatticeVector:
        return word_apply(self, v)

    def matrix(self) -> IntMatrix:
        """Matrix of the composite; the first reflection is applied first."""
        result = IntMatrix.identity(self.lattice.rank)
        for root in self.roots:
            result = reflection_matrix(root) @ result
        return result

    def extended(self, root: Root) -> 'WeylWord':
        return WeylWord(self.lattice, self.roots + (root,))


def reflect(root: Root, v: VectorLike) -> LatticeVector:
    """Reflection in the wall of δ: v ↦ v + (v·δ)·δ.

    Raises:
        LatticeMismatchError: If v belongs to another lattice.
    """
    lattice = root.lattice
    v = lattice.coerce(v)
    k = inner(lattice, v, root.vector)
    return lattice.vector(tuple(x + k * d for x, d in zip(v.coords, root.coords)))


def reflection_matrix(root: Root) -> IntMatrix:
    """Integer matrix I + δ·(Gδ)ᵀ of the reflection in δ."""
    g_delta = root.lattice.pairing_vector(root.vector)
    n = root.lattice.rank
    return IntMatrix.from_rows(
        [int(i == j) + root.coords[i] * g_delta[j] for j in range(n)]
        for i in range(n)
    )


def word_apply(word: WeylWord, v: VectorLike) -> LatticeVector:
    v = word.lattice.coerce(v)
    for root in word.roots:
        v = reflect(root, v)
    return v


def _ceil_isqrt(value: Fraction) -> int:
    """Smallest integer r >= 0 with r² >= value, for value >= 0."""
    floor_value = value.numerator // value.denominator
    r = math.isqrt(floor_value)
    while r * r < value:
        r += 1
    return r


def _fincke_pohst(
    gram: IntMatrix,
    center: Sequence[Fraction],
    target: Fraction
) -> List[Tuple[int, ...]]:
    """All integer t with (t - c)ᵀ·P·(t - c) == target for positive definite P.

    Uses P = L·diag(D)·Lᵀ and descends from the last coordinate, bounding
    each one by what is left of the target.
    """
    m = gram.nrows
    decomposition = ldl(gram)
    if not decomposition.transform.is_identity():
        raise ArithmeticError("Positive definite form needed a non-trivial pivot")
    lower, d = decomposition.lower, decomposition.diagonal
    solutions: List[Tuple[int, ...]] = []
    x: List[Fraction] = [Fraction(0)] * m
    t: List[int] = [0] * m

    def descend(k: int, remaining: Fraction) -> None:
        if k < 0:
            if remaining == 0:
                solutions.append(tuple(t))
            return
        shift = sum((lower[i, k] * x[i] for i in range(k + 1, m)), Fraction(0))
        mid = center[k] - shift
        radius_sq = remaining / d[k]
        reach = _ceil_isqrt(radius_sq)
        low = math.floor(mid) - reach
        high = math.ceil(mid) + reach
        for value in range(low, high + 1):
            offset = value - mid
            if offset * offset > radius_sq:
                continue
            t[k] = value
            x[k] = value - center[k]
            descend(k - 1, remaining - d[k] * offset * offset)
        x[k] = Fraction(0)

    descend(m - 1, target)
    return sorted(solutions)


def roots_with_pairing(lattice: Lattice, v: VectorLike, pairing: int) -> Tuple[Root, ...]:
    """The complete set {δ : δ² = -2, δ·v = c}, sorted by coordinates.

    δ·v = c is solved as a linear Diophantine equation δ = x₀ + K·t; on the
    kernel K (the complement of the positive vector v) the form is negative
    definite, so the norm condition fixes an ellipsoid in t.

    The set is empty when no integer δ pairs to c.

    Raises:
        NotHyperbolicError: If the signature is not (1, rank - 1).
        NotPositiveError: If v² <= 0.
    """
    require_hyperbolic(lattice)
    v = require_positive(lattice, v)
    try:
        solution = solve_linear_diophantine(lattice.pairing_vector(v), pairing)
    except NoSolutionError:
        return ()
    x0 = solution.particular
    if not solution.basis:
        found = [x0] if lattice.norm(x0) == ROOT_NORM else []
    else:
        kernel = IntMatrix.from_columns(solution.basis)
        # P = -KᵀGK is positive definite; δ² = -2 becomes (t - t₀)ᵀP(t - t₀) = R.
        positive_form = -(kernel.transpose() @ lattice.gram @ kernel)
        linear = kernel.transpose().apply(lattice.gram.apply(x0))
        center = inverse(positive_form).apply(linear)
        target = (
            lattice.norm(x0) - ROOT_NORM
            + sum((c * b for c, b in zip(center, linear)), Fraction(0))
        )
        if target < 0:
            return ()
        found = [
            tuple(a + b for a, b in zip(x0, kernel.apply(t)))
            for t in _fincke_pohst(positive_form, center, target)
        ]
    roots = tuple(Root.of(lattice, coords) for coords in sorted(found))
    for root in roots:
        if inner(lattice, root.vector, v) != pairing:
            raise ArithmeticError(f"Enumerated root {root.coords} misses pairing {pairing}")
    return roots


def separating_bounds(lattice: Lattice, v: VectorLike, w: VectorLike) -> Tuple[int, int]:
    """Bounds (A, B) with |δ·v| <= A and |δ·w| <= B for every separating root.

    The Gram matrix of (v, w, δ) has nonnegative determinant in signature
    (1, n), which reads w²a² + v²b² - 2(v·w)ab <= 2Δ with
    Δ = (v·w)² - v²w² >= 0. For a < 0 <= b every term on the left is
    nonnegative.
    """
    v2, w2, vw = lattice.norm(v), lattice.norm(w), inner(lattice, v, w)
    delta = vw * vw - v2 * w2
    return math.isqrt(2 * delta // w2), math.isqrt(2 * delta // v2)


def _require_same_cone(lattice: Lattice, v: VectorLike, w: VectorLike) -> Tuple[LatticeVector, LatticeVector]:
    require_hyperbolic(lattice)
    v = require_positive(lattice, v, 'v')
    w = require_positive(lattice, w, 'w')
    if inner(lattice, v, w) <= 0:
        raise NotSameConeError(
            f"{list(v.coords)} and {list(w.coords)} lie in opposite positive cones"
        )
    return v, w


def separating_roots(lattice: Lattice, v: VectorLike, w: VectorLike) -> Tuple[Root, ...]:
    """All roots δ with δ·v < 0 <= δ·w, sorted by coordinates.

    Raises:
        NotHyperbolicError: If the signature is not (1, rank - 1).
        NotPositiveError: If v² <= 0 or w² <= 0.
        NotSameConeError: If v·w <= 0.
    """
    v, w = _require_same_cone(lattice, v, w)
    bound_v, _ = separating_bounds(lattice, v, w)
    found = []
    for a in range(-bound_v, 0):
        for root in roots_with_pairing(lattice, v, a):
            if inner(lattice, root.vector, w) >= 0:
                found.append(root)
    return tuple(sorted(found, key=lambda r: r.coords))


def walls_through(lattice: Lattice, v: VectorLike) -> Tuple[Root, ...]:
    """Roots orthogonal to v, i.e. walls on which v lies."""
    return roots_with_pairing(lattice, v, 0)


@dataclass(frozen=True)
class ChamberWalk:
    """Result of a chamber walk.

    Attributes:
        word: Reflections in the order applied.
        start: The starting vector v.
        target: The vector w whose closed chamber is reached.
        endpoint: word(v).
        bounds: Separating-root bounds used at each step.
    """

    word: WeylWord
    start: LatticeVector
    target: LatticeVector
    endpoint: LatticeVector
    bounds: Tuple[Tuple[int, int], ...] = ()


def chamber_walk(
    lattice: Lattice,
    v: VectorLike,
    w: VectorLike,
    cap: int = config.DEFAULT_WALK_CAP
) -> ChamberWalk:
    """Reflects v across separating walls until no wall separates it from w.

    Only strictly separating roots (δ·v < 0 < δ·w) are reflected in; among
    them the walk takes the smallest |δ·v|, then the lexicographically
    smallest coordinates. Each reflection lowers the integer v·w, so the walk
    terminates. When w lies on a wall, roots with δ·w = 0 can still separate
    after the walk; the endpoint is then a chamber whose closure contains w.

    Raises:
        NotHyperbolicError, NotPositiveError, NotSameConeError: On bad input.
        WalkDivergedError: If more than ``cap`` reflections are needed.
    """
    v, w = _require_same_cone(lattice, v, w)
    start = v
    word = WeylWord(lattice)
    bounds = []
    while True:
        bounds.append(separating_bounds(lattice, v, w))
        walls = [r for r in separating_roots(lattice, v, w) if inner(lattice, r.vector, w) > 0]
        if not walls:
            break
        if len(word) >= cap:
            raise WalkDivergedError(f"Chamber walk exceeded {cap} reflections")
        chosen = min(walls, key=lambda r: (abs(inner(lattice, r.vector, v)), r.coords))
        logger.debug("Reflecting %s in root %s", list(v.coords), list(chosen.coords))
        v = reflect(chosen, v)
        word = word.extended(chosen)
    if walls_through(lattice, w):
        logger.warning(
            "Walk target %s lies on a wall; stopped in a chamber adjacent to it",
            list(w.coords),
        )
    elif walls_through(lattice, v):
        logger.warning(
            "Walk endpoint %s lies on a wall; the closed chamber is ambiguous",
            list(v.coords),
        )
    return ChamberWalk(word, start, w, v, tuple(bounds))


def same_chamber(lattice: Lattice, v: VectorLike, w: VectorLike) -> bool:
    """True iff no root wall separates v from w in either direction."""
    return not separating_roots(lattice, v, w) and not separating_roots(lattice, w, v)


def enumerate_box(
    lattice: Lattice,
    radius: int,
    predicate: Optional[Callable[[LatticeVector], bool]] = None
) -> List[LatticeVector]:
    """Brute force over all coordinate vectors with entries in [-radius, radius]."""
    out = []
    for coords in itertools.product(range(-radius, radius + 1), repeat=lattice.rank):
        vector = lattice.vector(coords)
        if predicate is None or predicate(vector):
            out.append(vector)
    return out


def roots_in_box(lattice: Lattice, radius: int, pairing_with: VectorLike, pairing: int) -> List[Tuple[int, ...]]:
    """Box oracle for ``roots_with_pairing``: coordinates only, sorted."""
    g_v = lattice.pairing_vector(pairing_with)
    return sorted(
        x.coords for x in enumerate_box(
            lattice, radius,
            lambda x: dot(x.coords, g_v) == pairing and lattice.norm(x) == ROOT_NORM,
        )
    )
