"""Writers for serializing hyperlat results to JSON."""

from hyperlat.writers.json_writer import (
    JsonWriter,
    embedding_to_dict,
    isometry_to_dict,
    lattice_to_dict,
    report_to_dict,
    walk_to_dict,
    write_json,
)

__all__ = [
    'JsonWriter',
    'embedding_to_dict',
    'isometry_to_dict',
    'lattice_to_dict',
    'report_to_dict',
    'walk_to_dict',
    'write_json',
]
