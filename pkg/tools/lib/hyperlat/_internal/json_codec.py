"""JSON encoding of exact values.

Integers at or above 2^53 in magnitude are written as decimal strings so
that JSON readers backed by doubles do not round them; readers accept either
form. Fractions are written as ``"p/q"`` strings.
"""

import json
from fractions import Fraction
from typing import Any, List, Sequence, Union

from hyperlat.config import JSON_SAFE_INTEGER
from hyperlat.exact import IntMatrix
from hyperlat.exceptions import InputError
from hyperlat.polynomial import IntPolynomial

JsonInt = Union[int, str]


def encode_int(value: int) -> JsonInt:
    return str(value) if abs(value) >= JSON_SAFE_INTEGER else value


def decode_int(value: Any) -> int:
    """Reads an integer given as a JSON number or a decimal string.

    Raises:
        InputError: For booleans, floats or non-numeric strings.
    """
    if isinstance(value, bool):
        raise InputError(f"Expected an integer, got boolean {value}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError as e:
            raise InputError(f"Expected an integer string, got {value!r}") from e
    raise InputError(f"Expected an integer, got {value!r}")


def encode_vector(values: Sequence[int]) -> List[JsonInt]:
    return [encode_int(x) for x in values]


def decode_vector(data: Any) -> tuple:
    if not isinstance(data, list) or not data:
        raise InputError(f"Expected a nonempty list of integers, got {data!r}")
    return tuple(decode_int(x) for x in data)


def encode_matrix(matrix: IntMatrix) -> List[List[JsonInt]]:
    return [encode_vector(row) for row in matrix.entries]


def decode_matrix(data: Any) -> IntMatrix:
    """Reads a list of integer rows.

    Raises:
        InputError: If the data is not a rectangular integer matrix.
    """
    if not isinstance(data, list) or not data:
        raise InputError("Expected a nonempty list of rows")
    rows = [decode_vector(row) for row in data]
    if any(len(row) != len(rows[0]) for row in rows):
        raise InputError("Matrix rows have different lengths")
    return IntMatrix.from_rows(rows)


def encode_polynomial(p: IntPolynomial) -> dict:
    return {'coeffs': encode_vector(p.coeffs) if p.coeffs else [0]}


def decode_polynomial(data: Any) -> IntPolynomial:
    if not isinstance(data, dict) or 'coeffs' not in data:
        raise InputError("Polynomial must be an object with 'coeffs'")
    return IntPolynomial(decode_vector(data['coeffs']))


def encode_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def decode_fraction(value: Any) -> Fraction:
    if isinstance(value, (int, str)) and not isinstance(value, bool):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"Invalid fraction {value!r}") from e
    raise InputError(f"Invalid fraction {value!r}")


def canonical_json(data: Any) -> str:
    """Key-sorted, whitespace-free JSON used for hashing."""
    return json.dumps(data, sort_keys=True, separators=(',', ':'), ensure_ascii=True)


def pretty_json(data: Any) -> str:
    """Indented, key-sorted JSON with a trailing newline."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + '\n'
