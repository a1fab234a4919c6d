"""JSON Schema validation for hyperlat files.

This module validates lattice, isometry, embedding, polynomial and
certificate documents against the schemas in formats/schemas/.
"""

import json
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Tuple

from jsonschema import validators


def get_schema_path(schema_name: str) -> Path:
    """Get the absolute path to a schema file.

    Args:
        schema_name: Name of the schema file (e.g., 'lattice.schema.json')

    Returns:
        Path object pointing to the schema file
    """
    # tools/lib/hyperlat/schema_validator.py -> formats/schemas/
    project_root = Path(__file__).resolve().parent.parent.parent.parent
    schema_path = project_root / 'formats' / 'schemas' / schema_name

    if not schema_path.exists():
        raise FileNotFoundError(f"Schema file not found: {schema_path}")

    return schema_path


@lru_cache(maxsize=None)
def _load_schema_text(schema_name: str) -> str:
    with open(get_schema_path(schema_name), 'r', encoding='utf-8') as f:
        return f.read()


def load_schema(schema_name: str) -> Dict[str, Any]:
    """Load a JSON schema file."""
    return json.loads(_load_schema_text(schema_name))


def validate_against_schema(data: Any, schema_name: str) -> Tuple[bool, List[str]]:
    """Validate a document against a schema.

    Args:
        data: The parsed JSON document
        schema_name: Name of the schema file

    Returns:
        A tuple of (is_valid, error_messages); messages are prefixed with the
        dotted path of the offending element.
    """
    schema = load_schema(schema_name)
    validator_class = validators.validator_for(schema)
    validator = validator_class(schema)

    errors = []
    for error in sorted(validator.iter_errors(data), key=lambda e: [str(p) for p in e.path]):
        path = '.'.join(str(p) for p in error.path) if error.path else 'root'
        errors.append(f"{path}: {error.message}")

    return len(errors) == 0, errors
