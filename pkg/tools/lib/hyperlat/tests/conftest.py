"""Shared fixtures for the hyperlat test suite."""

import logging
import random
from pathlib import Path
from typing import List, Sequence

import pytest

from hyperlat.exact import IntMatrix
from hyperlat.lattice import Isometry, Lattice, make_embedding, verify_isometry
from hyperlat.loaders import load_embedding, load_isometry, load_lattice
from hyperlat.logging_setup import ROOT_LOGGER
from hyperlat.weyl import Root, reflection_matrix

FIXTURES_DIR = Path(__file__).resolve().parents[4] / 'fixtures'

COXETER4_GRAM = [
    [-2, 1, 0, 0],
    [1, -2, 2, 0],
    [0, 2, -2, 1],
    [0, 0, 1, -2],
]

COXETER4_SALEM = [
    [0, -1, 2, 0],
    [1, -1, 2, 0],
    [2, -2, 4, -1],
    [0, 0, 1, -1],
]

# x^4 - 2x^3 - 5x^2 - 2x + 1, ascending.
COXETER4_CHARPOLY = (1, -2, -5, -2, 1)


def fixture_path(name: str) -> Path:
    return FIXTURES_DIR / f"{name}.json"


def simple_reflections(lattice: Lattice) -> List[IntMatrix]:
    """Reflections in the basis vectors that are roots."""
    return [
        reflection_matrix(Root.of(lattice, [int(i == j) for j in range(lattice.rank)]))
        for i in range(lattice.rank)
        if lattice.gram[i, i] == -2
    ]


def random_upper_triangular(rng: random.Random, n: int, max_index: int) -> IntMatrix:
    while True:
        diagonal = [rng.choice((1, 2, 3)) for _ in range(n)]
        index = 1
        for d in diagonal:
            index *= d
        if 2 <= index <= max_index:
            break
    rows = [
        [diagonal[i] if i == j else (rng.choice((-1, 0, 1)) if j > i else 0) for j in range(n)]
        for i in range(n)
    ]
    return IntMatrix.from_rows(rows)


def random_isometry(
    rng: random.Random, lattice: Lattice, generators: Sequence[IntMatrix], max_length: int = 5
) -> Isometry:
    matrix = IntMatrix.identity(lattice.rank)
    for _ in range(rng.randint(1, max_length)):
        matrix = matrix @ rng.choice(generators)
    return verify_isometry(lattice, matrix)


@pytest.fixture(autouse=True)
def reset_hyperlat_logger():
    """Undoes configure_logging so caplog sees hyperlat records."""
    yield
    logger = logging.getLogger(ROOT_LOGGER)
    logger.handlers.clear()
    logger.setLevel(logging.NOTSET)
    logger.propagate = True


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES_DIR


@pytest.fixture
def hyperbolic_plane() -> Lattice:
    return Lattice.from_rows([[0, 1], [1, 0]], 'U')


@pytest.fixture
def coxeter4() -> Lattice:
    return load_lattice(fixture_path('coxeter4'))


@pytest.fixture
def coxeter4_salem(coxeter4):
    return load_isometry(fixture_path('coxeter4-salem'), coxeter4)


@pytest.fixture
def coxeter4_index2(coxeter4):
    return load_embedding(fixture_path('coxeter4-index2'), coxeter4)


@pytest.fixture
def coxeter4x2() -> Lattice:
    return load_lattice(fixture_path('coxeter4x2'))


@pytest.fixture
def coxeter4x2_salem(coxeter4x2):
    return load_isometry(fixture_path('coxeter4x2-salem'), coxeter4x2)


@pytest.fixture
def coxeter4x2_index2(coxeter4x2):
    return load_embedding(fixture_path('coxeter4x2-index2'), coxeter4x2)


@pytest.fixture
def synthetic22():
    """coxeter4 plus eighteen -2 summands with a reflection-composed isometry.

    Returns:
        Tuple (lattice, isometry, index-2 embedding).
    """
    gram = IntMatrix.block_diagonal(
        IntMatrix.from_rows(COXETER4_GRAM),
        IntMatrix.diagonal([-2] * 18),
    )
    lattice = Lattice(gram, 'synthetic22')
    # Salem block times the reflection in the first -2 summand.
    matrix = IntMatrix.block_diagonal(
        IntMatrix.from_rows(COXETER4_SALEM),
        IntMatrix.diagonal([-1] + [1] * 17),
    )
    f = verify_isometry(lattice, matrix)
    embedding = make_embedding(lattice, IntMatrix.diagonal([2] + [1] * 21))
    return lattice, f, embedding
