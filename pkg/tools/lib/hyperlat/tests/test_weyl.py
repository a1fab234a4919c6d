"""Tests for roots, reflections, root enumeration and chamber walks."""

import logging

import pytest

from hyperlat.exact import IntMatrix
from hyperlat.exceptions import (
    LatticeMismatchError,
    NotARootError,
    NotHyperbolicError,
    NotPositiveError,
    NotSameConeError,
    WalkDivergedError,
)
from hyperlat.lattice import Lattice, verify_isometry
from hyperlat.loaders import load_lattice
from hyperlat.weyl import (
    Root,
    WeylWord,
    chamber_walk,
    reflect,
    reflection_matrix,
    roots_in_box,
    roots_with_pairing,
    same_chamber,
    separating_bounds,
    separating_roots,
    walls_through,
)

from .conftest import fixture_path


def coords_of(roots):
    return [r.coords for r in roots]


class TestRoots:
    """Roots and reflections."""

    def test_not_a_root(self, hyperbolic_plane):
        with pytest.raises(NotARootError):
            Root.of(hyperbolic_plane, (1, 1))

    def test_reflect(self, hyperbolic_plane):
        root = Root.of(hyperbolic_plane, (1, -1))
        assert reflect(root, (2, 1)).coords == (1, 2)
        assert reflect(root, root.vector).coords == (-1, 1)

    def test_reflection_matrix(self, hyperbolic_plane, coxeter4):
        assert reflection_matrix(Root.of(hyperbolic_plane, (1, -1))) == IntMatrix.from_rows([[0, 1], [1, 0]])
        for i in range(4):
            root = Root.of(coxeter4, [int(i == j) for j in range(4)])
            matrix = reflection_matrix(root)
            verify_isometry(coxeter4, matrix)
            assert (matrix @ matrix).is_identity()
            assert matrix.apply((1, 3, 2, 1)) == reflect(root, (1, 3, 2, 1)).coords

    def test_reflect_foreign_vector(self, hyperbolic_plane):
        root = Root.of(hyperbolic_plane, (1, -1))
        other = Lattice.from_rows([[0, 1], [1, 0]], 'other')
        with pytest.raises(LatticeMismatchError):
            reflect(root, other.vector((2, 1)))

    def test_word_matrix(self, coxeter4):
        e0 = Root.of(coxeter4, (1, 0, 0, 0))
        e1 = Root.of(coxeter4, (0, 1, 0, 0))
        word = WeylWord(coxeter4).extended(e0).extended(e1)
        v = (1, 2, 2, 1)
        assert word.matrix().apply(v) == word.apply(v).coords
        assert word.matrix() == reflection_matrix(e1) @ reflection_matrix(e0)


class TestRootsWithPairing:
    """Exact enumeration of roots with a fixed pairing."""

    def test_hyperbolic_plane(self, hyperbolic_plane):
        assert coords_of(roots_with_pairing(hyperbolic_plane, (1, 1), 0)) == [(-1, 1), (1, -1)]
        assert coords_of(roots_with_pairing(hyperbolic_plane, (2, 1), -1)) == [(1, -1)]
        assert roots_with_pairing(hyperbolic_plane, (2, 1), 5) == ()

    def test_rootless(self):
        u2 = load_lattice(fixture_path('U2'))
        for c in range(-4, 5):
            assert roots_with_pairing(u2, (1, 1), c) == ()

    def test_requires_hyperbolic(self):
        z2 = load_lattice(fixture_path('Z2'))
        with pytest.raises(NotHyperbolicError):
            roots_with_pairing(z2, (1, 0), 0)

    def test_requires_positive(self, hyperbolic_plane):
        with pytest.raises(NotPositiveError):
            roots_with_pairing(hyperbolic_plane, (1, 0), 0)

    @pytest.mark.parametrize("name,v,pairings,radii", [
        ('U', (1, 1), range(-3, 4), (1, 2, 3, 5)),
        ('U', (3, 1), range(-4, 5), (1, 3, 6)),
        ('U+A1', (1, 1, 0), range(-3, 4), (1, 2, 3, 4)),
        ('U+A1', (2, 1, 1), range(-2, 3), (2, 4)),
        ('coxeter4', (1, 2, 2, 1), range(-2, 3), (1, 2, 3)),
        ('coxeter4', (2, 3, 5, 1), range(-2, 3), (1, 2, 3)),
        ('U2', (1, 1), range(-3, 4), (1, 2, 3)),
        ('coxeter4x2', (1, 2, 2, 1), range(-3, 4), (1, 2)),
    ])
    def test_box_oracle(self, name, v, pairings, radii):
        lattice = load_lattice(fixture_path(name))
        for c in pairings:
            enumerated = coords_of(roots_with_pairing(lattice, v, c))
            assert len(set(enumerated)) == len(enumerated)
            for radius in radii:
                inside = [x for x in enumerated if max(abs(t) for t in x) <= radius]
                assert inside == roots_in_box(lattice, radius, v, c)

    def test_walls_through(self, hyperbolic_plane, coxeter4):
        assert coords_of(walls_through(hyperbolic_plane, (1, 1))) == [(-1, 1), (1, -1)]
        assert walls_through(hyperbolic_plane, (2, 1)) == ()
        assert (1, 0, 0, 0) in coords_of(walls_through(coxeter4, (1, 2, 2, 1)))


class TestSeparatingRoots:
    """Walls between two positive vectors."""

    def test_hyperbolic_plane(self, hyperbolic_plane):
        assert coords_of(separating_roots(hyperbolic_plane, (2, 1), (1, 2))) == [(1, -1)]
        assert coords_of(separating_roots(hyperbolic_plane, (1, 2), (2, 1))) == [(-1, 1)]
        assert separating_roots(hyperbolic_plane, (2, 1), (3, 1)) == ()

    def test_bounds(self, hyperbolic_plane):
        assert separating_bounds(hyperbolic_plane, (2, 1), (1, 2)) == (2, 2)
        assert separating_bounds(hyperbolic_plane, (1, 2), (1, 2)) == (0, 0)

    def test_bounds_hold(self, coxeter4):
        v, w = (1, 2, 2, 1), (2, 3, 5, 1)
        bound_v, bound_w = separating_bounds(coxeter4, v, w)
        found = separating_roots(coxeter4, v, w)
        for root in found:
            assert -bound_v <= coxeter4.inner(root.vector, v) < 0
            assert 0 <= coxeter4.inner(root.vector, w) <= bound_w

    @pytest.mark.parametrize("name,v,w", [
        ('U', (2, 1), (1, 3)),
        ('U', (1, 2), (3, 1)),
        ('U2', (1, 1), (1, 2)),
        ('U+A1', (2, 1, 0), (1, 2, 1)),
        ('U+A1', (1, 3, 1), (3, 1, 0)),
        ('coxeter4', (1, 2, 2, 1), (2, 3, 5, 1)),
        ('coxeter4', (1, 3, 2, 1), (2, 3, 5, 1)),
        ('coxeter4x2', (1, 2, 2, 1), (2, 3, 5, 1)),
    ])
    def test_box_oracle(self, name, v, w):
        lattice = load_lattice(fixture_path(name))
        found = set(coords_of(separating_roots(lattice, v, w)))
        g_v, g_w = lattice.pairing_vector(v), lattice.pairing_vector(w)
        bound_v, _ = separating_bounds(lattice, v, w)
        for c in range(-bound_v, 0):
            for x in roots_in_box(lattice, 3, v, c):
                if sum(a * b for a, b in zip(x, g_w)) >= 0:
                    assert x in found
        for x in found:
            assert sum(a * b for a, b in zip(x, g_v)) < 0
            assert sum(a * b for a, b in zip(x, g_w)) >= 0

    def test_rootless(self):
        u2 = load_lattice(fixture_path('U2'))
        assert separating_roots(u2, (1, 1), (1, 2)) == ()
        assert separating_roots(u2, (3, 1), (1, 3)) == ()

    def test_opposite_cones(self, hyperbolic_plane):
        with pytest.raises(NotSameConeError):
            separating_roots(hyperbolic_plane, (2, 1), (-1, -1))


class TestChamberWalk:
    """Walking a vector into the chamber of another."""

    def test_hyperbolic_plane(self, hyperbolic_plane):
        walk = chamber_walk(hyperbolic_plane, (2, 1), (1, 2))
        assert coords_of(walk.word.roots) == [(1, -1)]
        assert walk.endpoint.coords == (1, 2)
        assert walk.bounds == ((2, 2), (0, 0))

    def test_already_in_chamber(self, hyperbolic_plane):
        walk = chamber_walk(hyperbolic_plane, (2, 1), (3, 1))
        assert len(walk.word) == 0
        assert walk.endpoint.coords == (2, 1)

    def test_postcondition(self, coxeter4):
        start, target = (1, 3, 2, 1), (2, 3, 5, 1)
        walk = chamber_walk(coxeter4, start, target)
        assert walk.word.apply(start) == walk.endpoint
        assert walk.word.matrix().apply(start) == walk.endpoint.coords
        assert coxeter4.norm(walk.endpoint) == coxeter4.norm(start)
        for root in separating_roots(coxeter4, walk.endpoint, target):
            assert coxeter4.inner(root.vector, target) == 0

    def test_walk_undoes_reflection(self, coxeter4):
        target = (2, 3, 5, 1)
        e1 = Root.of(coxeter4, (0, 1, 0, 0))
        start = reflect(e1, target)
        assert coxeter4.inner(e1.vector, start) < 0 < coxeter4.inner(e1.vector, target)
        walk = chamber_walk(coxeter4, start, target)
        assert len(walk.word) >= 1
        for root in separating_roots(coxeter4, walk.endpoint, target):
            assert coxeter4.inner(root.vector, target) == 0

    def test_target_on_wall(self, hyperbolic_plane, caplog):
        with caplog.at_level(logging.WARNING, logger='hyperlat'):
            walk = chamber_walk(hyperbolic_plane, (2, 1), (1, 1))
        assert len(walk.word) == 0
        assert 'lies on a wall' in caplog.text

    def test_cap(self, hyperbolic_plane):
        with pytest.raises(WalkDivergedError) as excinfo:
            chamber_walk(hyperbolic_plane, (2, 1), (1, 2), cap=0)
        assert excinfo.value.exit_code == 3

    def test_opposite_cones(self, hyperbolic_plane):
        with pytest.raises(NotSameConeError):
            chamber_walk(hyperbolic_plane, (2, 1), (-1, -2))

    def test_rootless(self):
        u2 = load_lattice(fixture_path('U2'))
        walk = chamber_walk(u2, (1, 1), (1, 2))
        assert len(walk.word) == 0
        assert walk.endpoint.coords == (1, 1)

    def test_rootless_rescaled_lattice(self, coxeter4x2):
        walk = chamber_walk(coxeter4x2, (1, 3, 2, 1), (2, 3, 5, 1))
        assert len(walk.word) == 0
        assert same_chamber(coxeter4x2, (1, 3, 2, 1), (2, 3, 5, 1))


class TestSameChamber:
    """Chamber equality."""

    def test_hyperbolic_plane(self, hyperbolic_plane):
        assert same_chamber(hyperbolic_plane, (2, 1), (3, 1))
        assert not same_chamber(hyperbolic_plane, (2, 1), (1, 2))

    def test_rootless(self):
        u2 = load_lattice(fixture_path('U2'))
        assert same_chamber(u2, (2, 1), (1, 2))

    def test_reflection_changes_chamber(self, coxeter4):
        v = (2, 3, 5, 1)
        e1 = Root.of(coxeter4, (0, 1, 0, 0))
        assert coxeter4.inner(e1.vector, v) != 0
        assert not same_chamber(coxeter4, v, reflect(e1, v))
