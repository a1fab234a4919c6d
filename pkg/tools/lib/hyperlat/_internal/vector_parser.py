"""Parsing of vectors given on the command line.

Accepts JSON lists such as ``"[2, 1]"`` and plain comma-separated integers
such as ``"2,1"``.
"""

import json
from typing import Tuple

from hyperlat._internal.json_codec import decode_vector
from hyperlat.exceptions import InputError


def parse_vector(text: str) -> Tuple[int, ...]:
    """Parses a vector argument.

    Raises:
        InputError: If the text is empty or not a list of integers.
    """
    if not text or not text.strip():
        raise InputError("Vector argument cannot be empty")
    stripped = text.strip()
    if not stripped.startswith('['):
        stripped = f"[{stripped}]"
    try:
        data = json.loads(stripped)
    except json.JSONDecodeError as e:
        raise InputError(f"Invalid vector {text!r}: {e}") from e
    return decode_vector(data)
