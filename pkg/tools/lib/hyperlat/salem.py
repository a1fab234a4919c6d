"""Salem polynomial recognition and Salem degrees of isometries.

The characteristic polynomial of an isometry of a hyperbolic lattice is a
product of cyclotomic polynomials and at most one Salem polynomial. This
module strips the cyclotomic part, recognizes the remainder without
factoring it (Kronecker's theorem makes irreducibility automatic once the
root configuration is right) and reports the Salem degree.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from hyperlat.exceptions import NotMonicError, SalemAssertionFailure
from hyperlat.lattice import Isometry
from hyperlat.polynomial import (
    POS_INFINITY,
    IntPolynomial,
    charpoly,
    count_roots,
    cyclotomic,
    cyclotomic_indices_up_to_degree,
    euler_phi,
    exact_divide,
    is_reciprocal,
    squarefree_decomposition,
    trace_poly,
)

logger = logging.getLogger(__name__)

FLAG_QUADRATIC = 'quadratic-reciprocal'
FLAG_NON_SALEM = 'non-salem-remainder'
FLAG_NEGATED = 'negated-salem'
FLAG_NON_HYPERBOLIC = 'non-hyperbolic'


class SalemReason(str, Enum):
    """Why a polynomial is or is not a Salem polynomial."""

    NOT_RECIPROCAL = 'NotReciprocal'
    HAS_CYCLOTOMIC_FACTOR = 'HasCyclotomicFactor'
    WRONG_ROOT_COUNT = 'WrongRootCount'
    QUADRATIC_RECIPROCAL = 'QuadraticReciprocal'
    DEGREE_TOO_SMALL = 'DegreeTooSmall'
    OK = 'OK'


@dataclass(frozen=True)
class SalemVerdict:
    """Outcome of ``is_salem``.

    Attributes:
        is_salem: True iff reason is OK.
        reason: The deciding check.
        root_counts: Roots of the trace polynomial in (2, ∞) and in (-2, 2),
            with multiplicity; (0, 0) when the trace polynomial was not
            reached.
    """

    is_salem: bool
    reason: SalemReason
    root_counts: Tuple[int, int] = (0, 0)


@dataclass(frozen=True)
class FactorReport:
    """Factorization of a characteristic polynomial.

    ``input == ∏ Φ_n^mult · salem^mult · quadratic^mult · residual`` where a
    negated factor s enters the product as s(-x).

    Attributes:
        input: The analyzed polynomial.
        cyclotomic: Pairs (n, multiplicity), ascending in n.
        salem_factor: The Salem polynomial, if any.
        salem_multiplicity: Its multiplicity (0 when absent).
        negated: True when the actual factor is salem_factor(-x), i.e. the
            isometry has the eigenvalue -λ.
        quadratic_factor: A reciprocal quadratic x² - tx + 1 with t > 2,
            kept apart from salem_factor.
        residual: Whatever is left; 1 unless a non-Salem remainder was seen.
        flags: Conventions or anomalies that fired.
    """

    input: IntPolynomial
    cyclotomic: Tuple[Tuple[int, int], ...] = ()
    salem_factor: Optional[IntPolynomial] = None
    salem_multiplicity: int = 0
    negated: bool = False
    quadratic_factor: Optional[IntPolynomial] = None
    quadratic_multiplicity: int = 0
    residual: IntPolynomial = IntPolynomial((1,))
    flags: Tuple[str, ...] = ()

    @property
    def degree(self) -> int:
        """Salem degree: degree of the non-cyclotomic factor, 0 if none."""
        if self.salem_factor is not None:
            return self.salem_factor.degree
        if self.quadratic_factor is not None:
            return self.quadratic_factor.degree
        return max(self.residual.degree, 0)

    @property
    def cyclotomic_part(self) -> IntPolynomial:
        result = IntPolynomial.constant(1)
        for n, mult in self.cyclotomic:
            result = result * cyclotomic(n) ** mult
        return result

    def product(self) -> IntPolynomial:
        """Multiplies every recorded part back together."""
        result = self.cyclotomic_part * self.residual
        if self.salem_factor is not None:
            result = result * _oriented(self.salem_factor, self.negated) ** self.salem_multiplicity
        if self.quadratic_factor is not None:
            result = result * _oriented(self.quadratic_factor, self.negated) ** self.quadratic_multiplicity
        return result


def _oriented(p: IntPolynomial, negated: bool) -> IntPolynomial:
    return p.compose_negated().monic_sign() if negated else p


def _require_monic(p: IntPolynomial) -> None:
    if not p.is_monic():
        raise NotMonicError(f"Polynomial {p} is not monic")


def strip_cyclotomic(p: IntPolynomial) -> FactorReport:
    """Divides out every cyclotomic factor of p with multiplicity.

    Every n with phi(n) <= deg p is tried, so the residual has no cyclotomic
    factor of any order.

    Raises:
        NotMonicError: If p is not monic.
    """
    _require_monic(p)
    remainder = p
    found = []
    for n in cyclotomic_indices_up_to_degree(p.degree):
        if euler_phi(n) > remainder.degree:
            continue
        phi_n = cyclotomic(n)
        mult = 0
        while remainder.degree >= phi_n.degree:
            quotient = exact_divide(remainder, phi_n)
            if quotient is None:
                break
            remainder = quotient
            mult += 1
        if mult:
            found.append((n, mult))
    return FactorReport(input=p, cyclotomic=tuple(found), residual=remainder)


def has_cyclotomic_factor(p: IntPolynomial) -> bool:
    return bool(strip_cyclotomic(p).cyclotomic)


def is_salem(p: IntPolynomial) -> SalemVerdict:
    """Decides whether p is a Salem polynomial.

    p is Salem iff it is reciprocal of even degree >= 4, has no cyclotomic
    factor, and its trace polynomial has exactly one root in (2, ∞) with all
    remaining roots in (-2, 2). Such a p is irreducible: any factor with all
    roots on the unit circle would be cyclotomic by Kronecker's theorem.

    Raises:
        NotMonicError: If p is not monic.
    """
    _require_monic(p)
    if p.degree < 1:
        return SalemVerdict(False, SalemReason.DEGREE_TOO_SMALL)
    if not is_reciprocal(p):
        return SalemVerdict(False, SalemReason.NOT_RECIPROCAL)
    if p.degree % 2 or p.evaluate(1) == 0 or p.evaluate(-1) == 0 or has_cyclotomic_factor(p):
        return SalemVerdict(False, SalemReason.HAS_CYCLOTOMIC_FACTOR)
    q = trace_poly(p)
    outside = count_roots(q, 2, POS_INFINITY, include_b=False, multiplicity=True)
    inside = count_roots(q, -2, 2, include_b=False, multiplicity=True)
    counts = (outside, inside)
    if outside != 1 or inside != q.degree - 1:
        return SalemVerdict(False, SalemReason.WRONG_ROOT_COUNT, counts)
    if p.degree == 2:
        return SalemVerdict(False, SalemReason.QUADRATIC_RECIPROCAL, counts)
    return SalemVerdict(True, SalemReason.OK, counts)


def _match_power(remainder: IntPolynomial, reason: SalemReason):
    """Finds (s, k, negated) with remainder = s^k (or s(-x)^k) and s judged ``reason``."""
    candidates = [(remainder, 1)]
    parts = squarefree_decomposition(remainder)
    if len(parts) == 1 and parts[0][1] > 1:
        candidates.append(parts[0])
    for base, mult in candidates:
        for negated in (False, True):
            s = base.compose_negated().monic_sign() if negated else base
            if is_salem(s).reason is reason:
                return s, mult, negated
    return None


def analyze_polynomial(p: IntPolynomial, hyperbolic: bool = True) -> FactorReport:
    """Full factor report of a characteristic polynomial.

    Args:
        p: Monic integer polynomial.
        hyperbolic: Whether p comes from an isometry of a form of signature
            (1, n). There the non-cyclotomic remainder must be 1 or a single
            Salem factor (or a reciprocal quadratic).

    Raises:
        NotMonicError: If p is not monic.
        SalemAssertionFailure: If hyperbolic and the remainder is neither.
    """
    stripped = strip_cyclotomic(p)
    remainder = stripped.residual
    if remainder.is_one():
        return stripped

    match = _match_power(remainder, SalemReason.OK)
    if match is not None:
        s, mult, negated = match
        if hyperbolic and mult > 1:
            raise SalemAssertionFailure(
                f"Salem factor {s} occurs {mult} times in the characteristic "
                f"polynomial of a hyperbolic isometry"
            )
        return FactorReport(
            input=p,
            cyclotomic=stripped.cyclotomic,
            salem_factor=s,
            salem_multiplicity=mult,
            negated=negated,
            flags=(FLAG_NEGATED,) if negated else (),
        )

    quadratic = _match_power(remainder, SalemReason.QUADRATIC_RECIPROCAL)
    if quadratic is not None:
        s, mult, negated = quadratic
        logger.warning(
            "Remainder %s is a reciprocal quadratic; reported with degree 2, "
            "not counted as Salem", s
        )
        flags = (FLAG_QUADRATIC,) + ((FLAG_NEGATED,) if negated else ())
        return FactorReport(
            input=p,
            cyclotomic=stripped.cyclotomic,
            quadratic_factor=s,
            quadratic_multiplicity=mult,
            negated=negated,
            flags=flags,
        )

    if hyperbolic:
        raise SalemAssertionFailure(
            f"Non-cyclotomic remainder {remainder} of a hyperbolic isometry is "
            f"not a Salem polynomial"
        )
    logger.warning(
        "Non-cyclotomic remainder %s is not Salem; reporting its degree %d",
        remainder, remainder.degree,
    )
    return FactorReport(
        input=p,
        cyclotomic=stripped.cyclotomic,
        residual=remainder,
        flags=(FLAG_NON_SALEM, FLAG_NON_HYPERBOLIC),
    )


def salem_degree_of_polynomial(p: IntPolynomial, hyperbolic: bool = True) -> int:
    return analyze_polynomial(p, hyperbolic).degree


def salem_degree(f: Isometry) -> Tuple[int, FactorReport]:
    """Salem degree of an isometry with its factor report.

    On a lattice of signature (1, n) the remainder is asserted to be Salem;
    elsewhere it is reported best-effort with a warning.

    Raises:
        SalemAssertionFailure: On a hyperbolic lattice whose isometry has a
            remainder that is neither 1 nor Salem.
    """
    hyperbolic = f.lattice.is_hyperbolic()
    if not hyperbolic:
        logger.warning(
            "Lattice %s has signature %s; Salem degree is best-effort",
            f.lattice.label or '<unnamed>', f.lattice.signature,
        )
    report = analyze_polynomial(charpoly(f.matrix), hyperbolic)
    logger.debug("Salem degree %d for %s", report.degree, report.input)
    return report.degree, report
