"""Loading lattices, isometries, embeddings and vectors from JSON files.

Every document is schema-checked before it is decoded; cross references
(an isometry naming its lattice) are checked against the loaded lattice.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

from hyperlat._internal.json_codec import decode_matrix, decode_polynomial, decode_vector
from hyperlat._internal.vector_parser import parse_vector
from hyperlat.exceptions import InputError
from hyperlat.lattice import Embedding, Isometry, Lattice, LatticeVector, make_embedding, verify_isometry, warn_if_odd
from hyperlat.polynomial import IntPolynomial
from hyperlat.schema_validator import validate_against_schema

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def load_json(path: PathLike) -> Any:
    """Reads a JSON file.

    Raises:
        InputError: If the file is missing or is not valid JSON.
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except FileNotFoundError as e:
        raise InputError(f"File not found: {path}") from e
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"Cannot read {path}: {e}") from e


def check_schema(data: Any, schema_name: str, source: str) -> None:
    is_valid, errors = validate_against_schema(data, schema_name)
    if not is_valid:
        raise InputError(f"{source} does not match {schema_name}: " + '; '.join(errors))


def lattice_from_dict(data: Dict[str, Any], source: str = 'lattice') -> Lattice:
    check_schema(data, 'lattice.schema.json', source)
    gram = decode_matrix(data['gram'])
    if gram.shape != (data['rank'], data['rank']):
        raise InputError(f"{source}: rank {data['rank']} does not match gram shape {gram.shape}")
    lattice = Lattice(gram, data.get('label'))
    warn_if_odd(lattice)
    return lattice


def _check_lattice_reference(data: Dict[str, Any], lattice: Lattice, source: str) -> None:
    name = data.get('lattice')
    if name is not None and lattice.label is not None and name != lattice.label:
        raise InputError(f"{source} refers to lattice {name!r}, not {lattice.label!r}")


def isometry_from_dict(data: Dict[str, Any], lattice: Lattice, source: str = 'isometry') -> Isometry:
    check_schema(data, 'isometry.schema.json', source)
    _check_lattice_reference(data, lattice, source)
    return verify_isometry(lattice, decode_matrix(data['matrix']))


def embedding_from_dict(data: Dict[str, Any], lattice: Lattice, source: str = 'embedding') -> Embedding:
    check_schema(data, 'embedding.schema.json', source)
    _check_lattice_reference(data, lattice, source)
    return make_embedding(lattice, decode_matrix(data['basis']), data.get('label'))


def load_lattice(path: PathLike) -> Lattice:
    return lattice_from_dict(load_json(path), str(path))


def load_isometry(path: PathLike, lattice: Lattice) -> Isometry:
    return isometry_from_dict(load_json(path), lattice, str(path))


def load_embedding(path: PathLike, lattice: Lattice) -> Embedding:
    return embedding_from_dict(load_json(path), lattice, str(path))


def load_polynomial(path: PathLike) -> IntPolynomial:
    data = load_json(path)
    check_schema(data, 'polynomial.schema.json', str(path))
    return decode_polynomial(data)


def load_vector(reference: str, lattice: Lattice, fixtures_path: Optional[Path] = None) -> LatticeVector:
    """Reads a vector from a literal like ``[2,1]`` or from a JSON file.

    A file holds either a bare list or ``{"lattice": ..., "vector": [...]}``.
    """
    path = fixtures_path or Path(reference)
    if fixtures_path is not None or (not reference.strip().startswith('[') and path.is_file()):
        data = load_json(path)
        if isinstance(data, dict):
            _check_lattice_reference(data, lattice, str(path))
            data = data.get('vector')
        coords = decode_vector(data)
    else:
        coords = parse_vector(reference)
    if len(coords) != lattice.rank:
        raise InputError(
            f"Vector {list(coords)} has length {len(coords)}, lattice rank is {lattice.rank}"
        )
    return lattice.vector(coords)
