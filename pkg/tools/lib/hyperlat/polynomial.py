"""Exact integer polynomials.

Characteristic polynomials, cyclotomic polynomials, reciprocal and trace
polynomial transforms, squarefree decomposition and Sturm-sequence real root
counting. Coefficients are stored in ascending degree order and are always
Python integers; intermediate Euclidean steps run over ``Fraction`` and are
cleared back to primitive integer polynomials.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple, Union

from hyperlat.exact import IntMatrix
from hyperlat.exceptions import DimensionError, NotReciprocalError

NEG_INFINITY = float('-inf')
POS_INFINITY = float('inf')

Bound = Union[int, Fraction, float]


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients, ascending degree.

    The zero polynomial has no coefficients and degree -1.
    """

    coeffs: Tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = [int(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, 'coeffs', tuple(coeffs))

    @classmethod
    def x(cls) -> 'IntPolynomial':
        return cls((0, 1))

    @classmethod
    def constant(cls, value: int) -> 'IntPolynomial':
        return cls((value,))

    @classmethod
    def monomial(cls, degree: int, coefficient: int = 1) -> 'IntPolynomial':
        return cls((0,) * degree + (coefficient,))

    @classmethod
    def from_descending(cls, coeffs: Sequence[int]) -> 'IntPolynomial':
        """Builds a polynomial from coefficients listed highest degree first."""
        return cls(tuple(reversed(tuple(coeffs))))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def is_monic(self) -> bool:
        return self.leading == 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: 'IntPolynomial') -> 'IntPolynomial':
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(tuple(self[k] + other[k] for k in range(n)))

    def __neg__(self) -> 'IntPolynomial':
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: 'IntPolynomial') -> 'IntPolynomial':
        return self + (-other)

    def __mul__(self, other) -> 'IntPolynomial':
        if isinstance(other, int):
            return IntPolynomial(tuple(other * c for c in self.coeffs))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> 'IntPolynomial':
        if exponent < 0:
            raise ValueError("Polynomial powers must be nonnegative")
        result = IntPolynomial.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def evaluate(self, value):
        """Horner evaluation at an int or Fraction."""
        result = 0
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    def derivative(self) -> 'IntPolynomial':
        return IntPolynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def compose_negated(self) -> 'IntPolynomial':
        """Returns p(-x)."""
        return IntPolynomial(tuple(
            -c if k % 2 else c for k, c in enumerate(self.coeffs)
        ))

    def reversed(self) -> 'IntPolynomial':
        """Returns x^deg · p(1/x)."""
        return IntPolynomial(tuple(reversed(self.coeffs)))

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self) -> 'IntPolynomial':
        """Divides out the content and makes the leading coefficient positive."""
        if self.is_zero():
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPolynomial(tuple(c // g for c in self.coeffs))

    def monic_sign(self) -> 'IntPolynomial':
        """Flips the sign of a polynomial with leading coefficient -1."""
        return -self if self.leading < 0 else self

    def __str__(self) -> str:
        return format_polynomial(self)


def format_polynomial(p: IntPolynomial, variable: str = 'x') -> str:
    """Renders a polynomial as ``x^4 - 2x^3 - 2x + 1``."""
    if p.is_zero():
        return '0'
    parts: List[str] = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        sign = '-' if c < 0 else '+'
        magnitude = abs(c)
        if k == 0:
            body = str(magnitude)
        else:
            power = variable if k == 1 else f"{variable}^{k}"
            body = power if magnitude == 1 else f"{magnitude}{power}"
        if not parts:
            parts.append(('-' if sign == '-' else '') + body)
        else:
            parts.append(f"{sign} {body}")
    return ' '.join(parts)


# Rational helpers. Polynomials are lists of Fraction, ascending, no trailing zeros.

def _to_rational(p: IntPolynomial) -> List[Fraction]:
    return [Fraction(c) for c in p.coeffs]


def _trim(p: List[Fraction]) -> List[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _rational_divmod(a: List[Fraction], b: List[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    if not b:
        raise ZeroDivisionError("Polynomial division by zero")
    remainder = list(a)
    quotient = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(remainder) >= len(b) and remainder:
        shift = len(remainder) - len(b)
        factor = remainder[-1] / lead
        quotient[shift] = factor
        for i, c in enumerate(b):
            remainder[shift + i] -= factor * c
        remainder.pop()
        _trim(remainder)
    return _trim(quotient), remainder


def _clear_denominators(p: List[Fraction]) -> IntPolynomial:
    """Positive rescaling of a rational polynomial to a primitive integer one.

    The sign of every coefficient is preserved.
    """
    if not p:
        return IntPolynomial()
    scale = 1
    for c in p:
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    ints = [int(c * scale) for c in p]
    g = math.gcd(*ints)
    return IntPolynomial(tuple(c // g for c in ints))


def gcd(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Greatest common divisor, primitive with positive leading coefficient."""
    a, b = _to_rational(p), _to_rational(q)
    while b:
        _, r = _rational_divmod(a, b)
        a, b = b, r
    return _clear_denominators(a).primitive()


def divmod_poly(p: IntPolynomial, q: IntPolynomial) -> Tuple[List[Fraction], List[Fraction]]:
    """Quotient and remainder over the rationals."""
    return _rational_divmod(_to_rational(p), _to_rational(q))


def exact_divide(p: IntPolynomial, q: IntPolynomial) -> Optional[IntPolynomial]:
    """Returns p / q when q divides p exactly over the integers, else None.

    A non-exact division is an ordinary outcome, so it is signalled by None
    rather than an exception.
    """
    if q.is_zero():
        raise ZeroDivisionError("Polynomial division by zero")
    quotient, remainder = divmod_poly(p, q)
    if remainder or any(c.denominator != 1 for c in quotient):
        return None
    return IntPolynomial(tuple(int(c) for c in quotient))


def charpoly(matrix: IntMatrix) -> IntPolynomial:
    """Characteristic polynomial det(xI - M) by Faddeev-LeVerrier.

    Every division in the recurrence is exact over the integers.

    Raises:
        DimensionError: If the matrix is not square.
    """
    if not matrix.is_square:
        raise DimensionError(
            f"charpoly needs a square matrix, got {matrix.nrows}x{matrix.ncols}"
        )
    n = matrix.nrows
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    identity = IntMatrix.identity(n)
    m_k = IntMatrix.zeros(n, n)
    for k in range(1, n + 1):
        m_k = matrix @ m_k + identity * coeffs[n - k + 1]
        coeffs[n - k] = -(matrix @ m_k).trace() // k
    return IntPolynomial(tuple(coeffs))


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> IntPolynomial:
    """The n-th cyclotomic polynomial, by exact division of x^n - 1."""
    if n < 1:
        raise ValueError(f"Cyclotomic index must be positive, got {n}")
    result = IntPolynomial.monomial(n) - IntPolynomial.constant(1)
    for d in range(1, n):
        if n % d == 0:
            result = exact_divide(result, cyclotomic(d))
    return result


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def cyclotomic_indices_up_to_degree(degree: int) -> List[int]:
    """All n with phi(n) <= degree, ascending.

    phi(n) >= sqrt(n / 2), so scanning n up to 2·degree² is exhaustive.
    """
    limit = max(2 * degree * degree, 2)
    return [n for n in range(1, limit + 1) if euler_phi(n) <= degree]


def is_reciprocal(p: IntPolynomial) -> bool:
    """True iff the coefficient sequence is a palindrome."""
    return not p.is_zero() and p.coeffs == p.reversed().coeffs


def trace_poly(p: IntPolynomial) -> IntPolynomial:
    """Returns q with p(x) = x^(d/2) · q(x + 1/x).

    Writes p(x)/x^k = a_k + Σ a_(k+j)(x^j + x^-j) and uses
    x^j + x^-j = T_j(y) with T_(j+1) = y·T_j - T_(j-1).

    Raises:
        NotReciprocalError: If p is not reciprocal of even degree.
    """
    if not is_reciprocal(p) or p.degree % 2:
        raise NotReciprocalError(f"Not a reciprocal polynomial of even degree: {p}")
    k = p.degree // 2
    y = IntPolynomial.x()
    previous, current = IntPolynomial.constant(2), y
    q = IntPolynomial.constant(p[k])
    for j in range(1, k + 1):
        q = q + current * p[k + j]
        previous, current = current, y * current - previous
    return q


def untrace_poly(q: IntPolynomial) -> IntPolynomial:
    """Inverse of ``trace_poly``: expands x^deg(q) · q(x + 1/x)."""
    k = q.degree
    result = IntPolynomial()
    shift = IntPolynomial((1, 0, 1))
    for j, c in enumerate(q.coeffs):
        # x^k · (x + 1/x)^j = x^(k-j) · (x² + 1)^j
        result = result + IntPolynomial.monomial(k - j, c) * shift ** j
    return result


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    """p / gcd(p, p'), primitive with positive leading coefficient."""
    if p.degree < 1:
        return p.primitive() if not p.is_zero() else p
    quotient, _ = _rational_divmod(_to_rational(p), _to_rational(gcd(p, p.derivative())))
    return _clear_denominators(quotient).primitive()


def squarefree_decomposition(p: IntPolynomial) -> List[Tuple[IntPolynomial, int]]:
    """Yun's algorithm.

    Returns:
        Pairs (factor, multiplicity) of pairwise coprime squarefree primitive
        factors with positive leading coefficient and degree >= 1. Their
        product equals p up to a constant factor (exactly, for monic p).
    """
    if p.degree < 1:
        return []
    f = _to_rational(p)
    f_prime = _to_rational(p.derivative())
    a = _to_rational(gcd(p, p.derivative()))
    b, _ = _rational_divmod(f, a)
    c, _ = _rational_divmod(f_prime, a)
    factors: List[Tuple[IntPolynomial, int]] = []
    multiplicity = 1
    while len(b) > 1:
        b_prime = _rational_derivative(b)
        d = _trim([ci - bi for ci, bi in _zip_longest(c, b_prime)])
        a = _rational_gcd(b, d)
        if len(a) > 1:
            factors.append((_clear_denominators(a).primitive(), multiplicity))
        b, _ = _rational_divmod(b, a)
        c, _ = _rational_divmod(d, a)
        multiplicity += 1
    return factors


def _rational_derivative(p: List[Fraction]) -> List[Fraction]:
    return _trim([k * c for k, c in enumerate(p) if k])


def _rational_gcd(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    while b:
        _, r = _rational_divmod(a, b)
        a, b = b, r
    return a


def _zip_longest(a: List[Fraction], b: List[Fraction]):
    n = max(len(a), len(b))
    zero = Fraction(0)
    for k in range(n):
        yield (a[k] if k < len(a) else zero), (b[k] if k < len(b) else zero)


@dataclass(frozen=True)
class SturmChain:
    """Sturm sequence p, p', -rem(p, p'), ... as primitive integer polynomials.

    Every member is a positive multiple of the classical rational chain, so
    sign variations are unchanged.
    """

    polynomials: Tuple[IntPolynomial, ...]

    @classmethod
    def of(cls, p: IntPolynomial) -> 'SturmChain':
        """Builds the chain of the squarefree part of p."""
        base = squarefree_part(p)
        chain = [base]
        if base.degree >= 1:
            chain.append(_clear_denominators(_to_rational(base.derivative())))
            while True:
                _, r = _rational_divmod(_to_rational(chain[-2]), _to_rational(chain[-1]))
                if not r:
                    break
                chain.append(-_clear_denominators(r))
        return cls(tuple(chain))

    def variations(self, point: Bound) -> int:
        """Sign changes of the chain at a point, zeros skipped."""
        signs = [s for s in (_sign_at(p, point) for p in self.polynomials) if s]
        return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _sign_at(p: IntPolynomial, point: Bound) -> int:
    if p.is_zero():
        return 0
    if isinstance(point, float) and math.isinf(point):
        sign = 1 if p.leading > 0 else -1
        if point < 0 and p.degree % 2:
            sign = -sign
        return sign
    value = p.evaluate(Fraction(point))
    return (value > 0) - (value < 0)


def sturm_count(p: IntPolynomial, a: Bound, b: Bound) -> int:
    """Number of distinct real roots of p in the half-open interval (a, b].

    Args:
        p: Nonzero polynomial; only its squarefree part matters.
        a: Lower end, or NEG_INFINITY.
        b: Upper end, or POS_INFINITY.
    """
    if p.is_zero():
        raise ValueError("Root counting needs a nonzero polynomial")
    if not a < b:
        raise ValueError(f"Empty interval ({a}, {b}]")
    chain = SturmChain.of(p)
    return chain.variations(a) - chain.variations(b)


def _is_root(p: IntPolynomial, point: Bound) -> bool:
    if isinstance(point, float) and math.isinf(point):
        return False
    return p.evaluate(Fraction(point)) == 0


def count_roots(
    p: IntPolynomial,
    a: Bound,
    b: Bound,
    include_a: bool = False,
    include_b: bool = True,
    multiplicity: bool = False
) -> int:
    """Counts real roots of p between a and b with configurable endpoints.

    With ``multiplicity`` each root is counted as often as it divides p.
    """
    if multiplicity:
        return sum(
            mult * count_roots(factor, a, b, include_a, include_b)
            for factor, mult in squarefree_decomposition(p)
        )
    count = sturm_count(p, a, b)
    if include_a and _is_root(p, a):
        count += 1
    if not include_b and _is_root(p, b):
        count -= 1
    return count
