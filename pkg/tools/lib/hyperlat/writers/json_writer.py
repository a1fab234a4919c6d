"""JSON serialization of hyperlat objects.

This module turns lattices, isometries, factor reports, root sets and walks
into JSON-ready dictionaries and provides JsonWriter for writing documents
atomically.
"""

import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional

from hyperlat._internal.json_codec import (
    encode_int,
    encode_matrix,
    encode_polynomial,
    encode_vector,
    pretty_json,
)
from hyperlat.lattice import Embedding, Isometry, Lattice, LatticeVector
from hyperlat.polynomial import format_polynomial
from hyperlat.salem import FactorReport, SalemVerdict, is_salem
from hyperlat.weyl import ChamberWalk, Root, WeylWord


def lattice_to_dict(lattice: Lattice) -> Dict[str, Any]:
    return {
        'label': lattice.label,
        'rank': lattice.rank,
        'gram': encode_matrix(lattice.gram),
    }


def isometry_to_dict(f: Isometry) -> Dict[str, Any]:
    return {'lattice': f.lattice.label, 'matrix': encode_matrix(f.matrix)}


def embedding_to_dict(embedding: Embedding) -> Dict[str, Any]:
    return {
        'lattice': embedding.ambient.label,
        'basis': encode_matrix(embedding.basis),
        'index': encode_int(embedding.index),
        'sub_gram': encode_matrix(embedding.sub_gram),
        'quotient_invariants': encode_vector(embedding.quotient_invariants),
    }


def verdict_to_dict(verdict: SalemVerdict) -> Dict[str, Any]:
    return {
        'is_salem': verdict.is_salem,
        'reason': verdict.reason.value,
        'root_counts': list(verdict.root_counts),
    }


def report_to_dict(report: FactorReport) -> Dict[str, Any]:
    """FactorReport as JSON; the Salem entry carries its trace-root counts."""
    salem = None
    if report.salem_factor is not None:
        salem = encode_polynomial(report.salem_factor)
        salem.update({
            'mult': report.salem_multiplicity,
            'negated': report.negated,
            'root_counts': list(is_salem(report.salem_factor).root_counts),
            'text': format_polynomial(report.salem_factor),
        })
    quadratic = None
    if report.quadratic_factor is not None:
        quadratic = encode_polynomial(report.quadratic_factor)
        quadratic.update({
            'mult': report.quadratic_multiplicity,
            'negated': report.negated,
        })
    return {
        'input': encode_polynomial(report.input),
        'cyclotomic': [{'n': n, 'mult': mult} for n, mult in report.cyclotomic],
        'salem': salem,
        'quadratic': quadratic,
        'residual': encode_polynomial(report.residual),
        'degree': report.degree,
        'flags': list(report.flags),
    }


def vector_to_list(v: LatticeVector) -> List[Any]:
    return encode_vector(v.coords)


def roots_to_list(roots: Iterable[Root]) -> List[List[Any]]:
    return [encode_vector(root.coords) for root in roots]


def word_to_list(word: WeylWord) -> List[List[Any]]:
    return roots_to_list(word.roots)


def walk_to_dict(walk: ChamberWalk) -> Dict[str, Any]:
    return {
        'lattice': walk.word.lattice.label,
        'from': vector_to_list(walk.start),
        'to': vector_to_list(walk.target),
        'word': word_to_list(walk.word),
        'endpoint': vector_to_list(walk.endpoint),
        'bounds': [list(b) for b in walk.bounds],
    }


class JsonWriter:
    """Writes JSON documents: indented, key-sorted, newline-terminated."""

    def write(self, document: Dict[str, Any], output_path: Path) -> None:
        """Writes the document atomically (temporary file, then rename).

        Args:
            document: JSON-ready dictionary.
            output_path: Destination path.
        """
        self._write_string_to_file(self.write_to_string(document), Path(output_path))

    def write_to_string(self, document: Dict[str, Any]) -> str:
        return pretty_json(document)

    def _write_string_to_file(self, content: str, output_path: Path) -> None:
        output_path.parent.mkdir(parents=True, exist_ok=True)
        fd, temp_name = tempfile.mkstemp(
            dir=output_path.parent, prefix=f".{output_path.name}.", suffix='.tmp'
        )
        try:
            with os.fdopen(fd, 'w', encoding='utf-8') as f:
                f.write(content)
            os.replace(temp_name, output_path)
        except BaseException:
            if os.path.exists(temp_name):
                os.unlink(temp_name)
            raise


def write_json(document: Dict[str, Any], output_path: Optional[Path]) -> str:
    """Writes to a file when a path is given; always returns the text."""
    writer = JsonWriter()
    text = writer.write_to_string(document)
    if output_path is not None:
        writer._write_string_to_file(text, Path(output_path))
    return text
