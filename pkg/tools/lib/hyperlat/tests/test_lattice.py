"""Tests for lattices, isometries and finite-index embeddings."""

import random
from fractions import Fraction

import pytest

from hyperlat.exact import IntMatrix, det
from hyperlat.exceptions import (
    DegenerateFormError,
    DimensionError,
    LatticeMismatchError,
    NotAnIsometryError,
    NotHyperbolicError,
    NotPositiveError,
    SingularEmbeddingError,
)
from hyperlat.lattice import (
    Isometry,
    Lattice,
    LatticeVector,
    make_embedding,
    same_positive_cone,
    verify_isometry,
)
from hyperlat.loaders import load_lattice

from .conftest import COXETER4_GRAM, COXETER4_SALEM, fixture_path


class TestLattice:
    """Construction, signature and pairing."""

    @pytest.mark.parametrize("name,signature,determinant,even", [
        ('U', (1, 1), -1, True),
        ('U2', (1, 1), -4, True),
        ('U+A1', (1, 2), 2, True),
        ('Z2', (2, 0), 1, False),
        ('coxeter4', (1, 3), -7, True),
        ('coxeter4x2', (1, 3), -112, True),
    ])
    def test_fixture_invariants(self, name, signature, determinant, even):
        lattice = load_lattice(fixture_path(name))
        assert lattice.label == name
        assert lattice.signature == signature
        assert lattice.determinant == determinant
        assert lattice.is_even() is even
        assert lattice.is_hyperbolic() is (signature[0] == 1)

    def test_signature_against_numpy(self):
        np = pytest.importorskip("numpy")
        rng = random.Random(43)
        checked = 0
        while checked < 30:
            n = rng.randint(1, 6)
            a = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
            rows = [[a[i][j] + a[j][i] for j in range(n)] for i in range(n)]
            if det(IntMatrix.from_rows(rows)) == 0:
                continue
            eigenvalues = np.linalg.eigvalsh(np.array(rows, dtype=float))
            expected = (int((eigenvalues > 0).sum()), int((eigenvalues < 0).sum()))
            assert Lattice.from_rows(rows).signature == expected
            checked += 1

    def test_degenerate(self):
        with pytest.raises(DegenerateFormError):
            Lattice.from_rows([[1, 1], [1, 1]])

    def test_not_symmetric(self):
        with pytest.raises(DimensionError):
            Lattice.from_rows([[1, 2], [0, 1]])

    def test_inner_and_norm(self, coxeter4):
        assert coxeter4.norm((1, 2, 2, 1)) == 4
        assert coxeter4.inner((1, 2, 2, 1), (2, 3, 5, 1)) == 8
        assert coxeter4.inner((1, 0, 0, 0), (0, 1, 0, 0)) == 1

    def test_pairing_vector(self, hyperbolic_plane):
        assert hyperbolic_plane.pairing_vector((2, 1)) == (1, 2)

    def test_vector_of_other_lattice(self, hyperbolic_plane):
        other = Lattice.from_rows([[0, 1], [1, 0]], 'U-copy')
        v = other.vector((1, 0))
        with pytest.raises(LatticeMismatchError):
            hyperbolic_plane.inner(v, (0, 1))

    def test_wrong_length(self, hyperbolic_plane):
        with pytest.raises(DimensionError):
            hyperbolic_plane.norm((1, 2, 3))

    def test_vector_carries_label(self, coxeter4):
        v = coxeter4.vector([1, 0, 0, 0])
        assert v == LatticeVector((1, 0, 0, 0), 'coxeter4')
        assert coxeter4.coerce(v) is v

    def test_scaled_and_direct_sum(self, coxeter4):
        doubled = coxeter4.scaled(2, 'double')
        assert doubled.gram == coxeter4.gram * 2
        summed = coxeter4.direct_sum(Lattice.from_rows([[-2]]))
        assert summed.rank == 5
        assert summed.signature == (1, 4)


class TestIsometry:
    """Isometry checks and group operations."""

    def test_salem_fixture_is_isometry(self, coxeter4):
        f = verify_isometry(coxeter4, IntMatrix.from_rows(COXETER4_SALEM))
        assert f.lattice is coxeter4

    def test_reports_first_violated_entry(self, hyperbolic_plane):
        with pytest.raises(NotAnIsometryError) as excinfo:
            verify_isometry(hyperbolic_plane, IntMatrix.from_rows([[1, 1], [0, 1]]))
        assert excinfo.value.entry == (1, 1, 0, 2)

    def test_wrong_shape(self, hyperbolic_plane):
        with pytest.raises(DimensionError):
            verify_isometry(hyperbolic_plane, IntMatrix.identity(3))

    def test_apply(self, coxeter4_salem):
        assert coxeter4_salem.apply((1, 2, 2, 1)).coords == (2, 3, 5, 1)

    def test_inverse_and_compose(self, coxeter4_salem):
        product = coxeter4_salem.compose(coxeter4_salem.inverse())
        assert product.matrix.is_identity()

    def test_power_is_isometry(self, coxeter4_salem):
        cube = coxeter4_salem.power(3)
        assert cube.matrix == IntMatrix.from_rows(COXETER4_SALEM).power(3)
        assert coxeter4_salem.power(0).matrix.is_identity()

    def test_compose_across_lattices(self, coxeter4_salem, hyperbolic_plane):
        with pytest.raises(LatticeMismatchError):
            coxeter4_salem.compose(Isometry.identity(hyperbolic_plane))

    def test_improper_isometry(self):
        z2 = Lattice.from_rows([[1, 0], [0, 1]], 'Z2')
        f = verify_isometry(z2, IntMatrix.diagonal([1, -1]))
        assert det(f.matrix) == -1


class TestEmbedding:
    """Finite-index sublattices."""

    def test_coxeter4_index2(self, coxeter4_index2):
        assert coxeter4_index2.index == 2
        assert coxeter4_index2.quotient_invariants == (2,)
        assert coxeter4_index2.sub_gram == IntMatrix.from_rows([
            [-8, 2, 0, 0],
            [2, -2, 2, 0],
            [0, 2, -2, 1],
            [0, 0, 1, -2],
        ])
        assert coxeter4_index2.sublattice.label == 'coxeter4/sub'

    def test_non_cyclic_quotient(self, hyperbolic_plane):
        embedding = make_embedding(hyperbolic_plane, IntMatrix.diagonal([2, 2]))
        assert embedding.index == 4
        assert embedding.quotient_invariants == (2, 2)
        assert embedding.sub_gram == IntMatrix.from_rows([[0, 4], [4, 0]])

    def test_index_one(self, hyperbolic_plane):
        embedding = make_embedding(hyperbolic_plane, IntMatrix.from_rows([[1, 1], [0, 1]]))
        assert embedding.index == 1
        assert embedding.quotient_invariants == ()

    def test_explicit_label(self, coxeter4):
        embedding = make_embedding(coxeter4, IntMatrix.identity(4), 'N')
        assert embedding.sublattice.label == 'N'

    def test_coordinates(self, coxeter4_index2):
        assert coxeter4_index2.to_sub_coords((1, 2, 2, 1)) == (
            Fraction(1, 2), Fraction(2), Fraction(2), Fraction(1)
        )
        sub = coxeter4_index2.sublattice
        assert coxeter4_index2.to_ambient(sub.vector((1, 4, 4, 2))).coords == (2, 4, 4, 2)

    def test_sub_gram_is_pullback(self, coxeter4, coxeter4_index2):
        sub = coxeter4_index2.sublattice
        u, w = (1, 0, 1, 0), (0, 1, 1, 1)
        ambient_u = coxeter4_index2.to_ambient(sub.vector(u))
        ambient_w = coxeter4_index2.to_ambient(sub.vector(w))
        assert sub.inner(u, w) == coxeter4.inner(ambient_u, ambient_w)

    def test_singular(self, coxeter4):
        with pytest.raises(SingularEmbeddingError):
            make_embedding(coxeter4, IntMatrix.diagonal([1, 1, 1, 0]))

    def test_wrong_shape(self, coxeter4):
        with pytest.raises(DimensionError):
            make_embedding(coxeter4, IntMatrix.identity(3))

    def test_ambient_vector_rejected_in_sublattice(self, coxeter4, coxeter4_index2):
        with pytest.raises(LatticeMismatchError):
            coxeter4_index2.to_ambient(coxeter4.vector((1, 0, 0, 0)))


class TestPositiveCone:
    """Cone membership in signature (1, n)."""

    def test_same_cone(self, hyperbolic_plane):
        assert same_positive_cone(hyperbolic_plane, (2, 1), (1, 2))
        assert not same_positive_cone(hyperbolic_plane, (2, 1), (-1, -1))

    def test_requires_positive(self, hyperbolic_plane):
        with pytest.raises(NotPositiveError):
            same_positive_cone(hyperbolic_plane, (2, 1), (1, 0))

    def test_requires_hyperbolic(self):
        z2 = Lattice.from_rows([[1, 0], [0, 1]])
        with pytest.raises(NotHyperbolicError):
            same_positive_cone(z2, (1, 0), (0, 1))

    def test_coxeter4_ample_pairs(self, coxeter4):
        assert same_positive_cone(coxeter4, (1, 2, 2, 1), (2, 3, 5, 1))


def test_gram_fixture_matches_constant(coxeter4):
    assert coxeter4.gram == IntMatrix.from_rows(COXETER4_GRAM)
