"""Tests for Salem recognition, cyclotomic stripping and Salem degrees."""

import logging
import random
from collections import Counter

import pytest

from hyperlat.exact import IntMatrix
from hyperlat.exceptions import NotMonicError, SalemAssertionFailure
from hyperlat.lattice import Lattice, verify_isometry
from hyperlat.loaders import load_isometry, load_lattice
from hyperlat.polynomial import (
    IntPolynomial,
    cyclotomic,
    cyclotomic_indices_up_to_degree,
    euler_phi,
)
from hyperlat.salem import (
    FLAG_NEGATED,
    FLAG_NON_HYPERBOLIC,
    FLAG_NON_SALEM,
    FLAG_QUADRATIC,
    SalemReason,
    analyze_polynomial,
    is_salem,
    salem_degree,
    strip_cyclotomic,
)

from .conftest import COXETER4_CHARPOLY, COXETER4_SALEM, fixture_path

LEHMER = IntPolynomial((1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1))
SMALLEST_QUARTIC = IntPolynomial((1, -1, -1, -1, 1))
QUARTIC = IntPolynomial((1, -2, 0, -2, 1))
FIXTURE_SALEM = IntPolynomial(COXETER4_CHARPOLY)
SALEMS = (LEHMER, SMALLEST_QUARTIC, QUARTIC, FIXTURE_SALEM)


def salem_oracle(p: IntPolynomial) -> bool:
    """Numerical Salem test: irreducible, one root outside the circle, real and > 1."""
    sympy = pytest.importorskip("sympy")
    np = pytest.importorskip("numpy")
    if p.degree < 4:
        return False
    x = sympy.Symbol('x')
    if not sympy.Poly(list(reversed(p.coeffs)), x).is_irreducible:
        return False
    roots = np.roots(list(reversed(p.coeffs)))
    outside = [z for z in roots if abs(z) > 1 + 1e-6]
    if len(outside) != 1:
        return False
    z = outside[0]
    return abs(z.imag) < 1e-9 and z.real > 1


def random_reciprocal(rng: random.Random) -> IntPolynomial:
    degree = rng.choice((4, 6, 8, 10))
    half = [1] + [rng.randint(-3, 3) for _ in range(degree // 2)]
    coeffs = half + list(reversed(half[:-1]))
    return IntPolynomial(tuple(coeffs))


class TestIsSalem:
    """Salem polynomial recognition."""

    def test_lehmer(self):
        verdict = is_salem(LEHMER)
        assert verdict.is_salem
        assert verdict.reason is SalemReason.OK
        assert verdict.root_counts == (1, 4)

    @pytest.mark.parametrize("p", SALEMS[1:])
    def test_known_quartics(self, p):
        verdict = is_salem(p)
        assert verdict.is_salem
        assert verdict.root_counts == (1, 1)

    def test_cyclotomics_are_not_salem(self):
        for n in cyclotomic_indices_up_to_degree(22):
            assert not is_salem(cyclotomic(n)).is_salem

    def test_cyclotomic_factor(self):
        assert is_salem(LEHMER * cyclotomic(5)).reason is SalemReason.HAS_CYCLOTOMIC_FACTOR
        assert is_salem(cyclotomic(12)).reason is SalemReason.HAS_CYCLOTOMIC_FACTOR

    def test_not_reciprocal(self):
        assert is_salem(IntPolynomial((-1, -1, 0, 0, 1))).reason is SalemReason.NOT_RECIPROCAL

    def test_wrong_root_count(self):
        p = IntPolynomial((1, -3, 1)) * IntPolynomial((1, -4, 1))
        verdict = is_salem(p)
        assert verdict.reason is SalemReason.WRONG_ROOT_COUNT
        assert verdict.root_counts == (2, 0)

    def test_negated_salem_is_not_salem(self):
        verdict = is_salem(QUARTIC.compose_negated())
        assert verdict.reason is SalemReason.WRONG_ROOT_COUNT

    def test_quadratic_reciprocal(self):
        verdict = is_salem(IntPolynomial((1, -3, 1)))
        assert not verdict.is_salem
        assert verdict.reason is SalemReason.QUADRATIC_RECIPROCAL
        assert verdict.root_counts == (1, 0)

    def test_constant(self):
        assert is_salem(IntPolynomial((1,))).reason is SalemReason.DEGREE_TOO_SMALL

    def test_not_monic(self):
        with pytest.raises(NotMonicError):
            is_salem(IntPolynomial((1, 0, 2)))

    def test_against_numerical_oracle(self):
        rng = random.Random(2024)
        corpus = list(SALEMS) + [random_reciprocal(rng) for _ in range(150)]
        verdicts = [is_salem(p).is_salem for p in corpus]
        for p, verdict in zip(corpus, verdicts):
            assert verdict == salem_oracle(p), str(p)
        assert any(verdicts[len(SALEMS):])


class TestStripCyclotomic:
    """Cyclotomic factors with multiplicity."""

    def test_product_of_cyclotomics(self):
        p = cyclotomic(1) ** 2 * cyclotomic(6) * cyclotomic(12)
        report = strip_cyclotomic(p)
        assert report.cyclotomic == ((1, 2), (6, 1), (12, 1))
        assert report.residual.is_one()

    def test_residual_kept(self):
        report = strip_cyclotomic(cyclotomic(2) * LEHMER)
        assert report.cyclotomic == ((2, 1),)
        assert report.residual == LEHMER

    def test_not_monic(self):
        with pytest.raises(NotMonicError):
            strip_cyclotomic(IntPolynomial((1, 2)))


class TestAnalyzePolynomial:
    """Factor reports of characteristic polynomials."""

    def test_round_trips(self):
        rng = random.Random(7)
        indices = [n for n in range(1, 31) if euler_phi(n) <= 22]
        for _ in range(220):
            salem = rng.choice(SALEMS + (None,))
            negated = salem is not None and rng.random() < 0.3
            budget = 22 - (salem.degree if salem is not None else 0)
            chosen = Counter()
            while True:
                n = rng.choice(indices)
                if euler_phi(n) > budget or rng.random() < 0.2:
                    break
                chosen[n] += 1
                budget -= euler_phi(n)
            p = IntPolynomial.constant(1)
            for n, mult in chosen.items():
                p = p * cyclotomic(n) ** mult
            if salem is not None:
                p = p * (salem.compose_negated() if negated else salem)

            report = analyze_polynomial(p)

            assert report.product() == p
            assert report.cyclotomic == tuple(sorted(chosen.items()))
            assert report.salem_factor == salem
            assert report.negated is negated
            assert report.degree == (salem.degree if salem is not None else 0)

    def test_fixture_charpoly(self):
        report = analyze_polynomial(FIXTURE_SALEM)
        assert report.degree == 4
        assert report.flags == ()
        assert report.cyclotomic == ()

    def test_negated(self):
        report = analyze_polynomial(FIXTURE_SALEM.compose_negated() * cyclotomic(1))
        assert report.negated
        assert report.salem_factor == FIXTURE_SALEM
        assert FLAG_NEGATED in report.flags
        assert report.degree == 4

    def test_quadratic_convention(self, caplog):
        with caplog.at_level(logging.WARNING, logger='hyperlat'):
            report = analyze_polynomial(IntPolynomial((1, -3, 1)) * cyclotomic(1) ** 2)
        assert report.salem_factor is None
        assert report.quadratic_factor == IntPolynomial((1, -3, 1))
        assert report.flags == (FLAG_QUADRATIC,)
        assert report.degree == 2
        assert 'reciprocal quadratic' in caplog.text

    def test_negated_quadratic(self):
        report = analyze_polynomial(IntPolynomial((1, 3, 1)))
        assert report.quadratic_factor == IntPolynomial((1, -3, 1))
        assert report.flags == (FLAG_QUADRATIC, FLAG_NEGATED)
        assert report.product() == IntPolynomial((1, 3, 1))

    def test_non_salem_remainder_asserts(self):
        p = IntPolynomial((1, -3, 1)) * IntPolynomial((1, -4, 1))
        with pytest.raises(SalemAssertionFailure):
            analyze_polynomial(p)

    def test_non_salem_remainder_best_effort(self):
        p = IntPolynomial((1, -3, 1)) * IntPolynomial((1, -4, 1))
        report = analyze_polynomial(p, hyperbolic=False)
        assert report.flags == (FLAG_NON_SALEM, FLAG_NON_HYPERBOLIC)
        assert report.residual == p
        assert report.degree == 4

    def test_repeated_salem_factor(self):
        p = SMALLEST_QUARTIC ** 2
        with pytest.raises(SalemAssertionFailure):
            analyze_polynomial(p)
        report = analyze_polynomial(p, hyperbolic=False)
        assert report.salem_factor == SMALLEST_QUARTIC
        assert report.salem_multiplicity == 2
        assert report.degree == 4


class TestSalemDegree:
    """Salem degrees of isometries."""

    def test_fixture(self, coxeter4_salem):
        degree, report = salem_degree(coxeter4_salem)
        assert degree == 4
        assert report.input == FIXTURE_SALEM

    @pytest.mark.parametrize('lattice_name,name,expected', [
        ('U', 'U-swap', 0),
        ('U', 'U-identity', 0),
        ('Z2', 'Z2-swap', 0),
        ('coxeter4', 'coxeter4-salem', 4),
        ('coxeter4x2', 'coxeter4x2-salem', 4),
    ])
    def test_power_invariance(self, lattice_name, name, expected):
        lattice = load_lattice(fixture_path(lattice_name))
        f = load_isometry(fixture_path(name), lattice)
        assert salem_degree(f)[0] == expected
        for k in range(1, 11):
            assert salem_degree(f.power(k))[0] == expected

    def test_power_invariance_rank22(self, synthetic22):
        _, f, _ = synthetic22
        for k in range(1, 11):
            degree, report = salem_degree(f.power(k))
            assert degree == 4
            assert report.salem_factor is not None

    def test_negated_isometry(self, coxeter4):
        f = verify_isometry(coxeter4, -IntMatrix.from_rows(COXETER4_SALEM))
        degree, report = salem_degree(f)
        assert degree == 4
        assert report.negated
        assert report.salem_factor == FIXTURE_SALEM

    def test_identity(self, coxeter4):
        degree, report = salem_degree(verify_isometry(coxeter4, IntMatrix.identity(4)))
        assert degree == 0
        assert report.cyclotomic == ((1, 4),)

    def test_rank22(self, synthetic22):
        _, f, _ = synthetic22
        degree, report = salem_degree(f)
        assert degree == 4
        assert report.cyclotomic == ((1, 17), (2, 1))

    def test_non_hyperbolic_warns(self, caplog):
        z2 = Lattice.from_rows([[1, 0], [0, 1]], 'Z2')
        f = verify_isometry(z2, IntMatrix.from_rows([[0, 1], [1, 0]]))
        with caplog.at_level(logging.WARNING, logger='hyperlat'):
            degree, _ = salem_degree(f)
        assert degree == 0
        assert 'best-effort' in caplog.text
