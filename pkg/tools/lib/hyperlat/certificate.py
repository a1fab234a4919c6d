"""Transfer certificates as JSON documents.

Serialization, loading and replay of ``TransferCertificate`` records. The
document layout is versioned by its ``schema`` field and validated against
formats/schemas/certificate.schema.json; its ``hash`` field is the content
hash of everything else.
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from hyperlat import config
from hyperlat._internal.json_codec import (
    decode_int,
    decode_matrix,
    decode_vector,
    encode_fraction,
    encode_int,
    encode_matrix,
    encode_polynomial,
    encode_vector,
)
from hyperlat.exceptions import HyperlatError, MalformedCertificateError
from hyperlat.hasher import with_hash
from hyperlat.lattice import Isometry, Lattice, make_embedding
from hyperlat.loaders import load_json
from hyperlat.polynomial import charpoly
from hyperlat.schema_validator import validate_against_schema
from hyperlat.transfer import ChamberSection, TransferCertificate, transfer_salem
from hyperlat.validator import CertificateValidator, ValidationResult
from hyperlat.writers.json_writer import embedding_to_dict, lattice_to_dict, report_to_dict, word_to_list

logger = logging.getLogger(__name__)

CERTIFICATE_SCHEMA_FILE = 'certificate.schema.json'


def _bounds(bounds) -> Optional[List[int]]:
    return list(bounds) if bounds is not None else None


def _chamber_to_dict(section: ChamberSection) -> Dict[str, Any]:
    alignment = section.alignment
    return {
        'ample': encode_vector(alignment.ample.coords),
        'image': encode_vector(section.image.coords),
        'f_fixes_chamber': section.f_fixes_chamber,
        'ambient_bounds': _bounds(section.ambient_bounds),
        'scale': encode_fraction(alignment.scale),
        'ample_sub': encode_vector(alignment.ample_sub.coords),
        'base': encode_vector(alignment.base.coords),
        'weyl_group': 'sublattice',
        'word': word_to_list(alignment.walk.word),
        'walked_base': encode_vector(alignment.walk.endpoint.coords),
        'walk_bounds': [list(b) for b in alignment.walk.bounds],
        'image_sub': encode_vector(section.image_sub.coords),
        'h_fixes_chamber': section.h_fixes_chamber,
        'sub_bounds': _bounds(section.sub_bounds),
        'require_chamber': section.require_chamber,
        'walk_cap': section.walk_cap,
    }


def certificate_to_dict(cert: TransferCertificate) -> Dict[str, Any]:
    """The certificate document, including its content hash."""
    stabilizing = cert.stabilizing
    document = {
        'schema': config.CERTIFICATE_SCHEMA,
        'tool_version': cert.tool_version,
        'lattice': lattice_to_dict(cert.lattice),
        'embedding': embedding_to_dict(cert.embedding),
        'isometry': {
            'matrix': encode_matrix(cert.isometry.matrix),
            'charpoly': encode_polynomial(charpoly(cert.isometry.matrix)),
            'report': report_to_dict(cert.report),
            'salem_degree': cert.salem_degree,
        },
        'descent': {
            'm': encode_int(stabilizing.m),
            'bound': encode_int(stabilizing.bound),
            'power': encode_matrix(stabilizing.power.matrix),
            'restricted': encode_matrix(stabilizing.restricted.matrix),
            'restricted_charpoly': encode_polynomial(charpoly(stabilizing.restricted.matrix)),
            'restricted_report': report_to_dict(cert.restricted_report),
            'restricted_salem_degree': cert.restricted_salem_degree,
        },
        'chamber': _chamber_to_dict(cert.chamber) if cert.chamber is not None else None,
    }
    return with_hash(document)


def check_certificate_schema(data: Any) -> None:
    """Raises MalformedCertificateError unless the document fits the schema."""
    is_valid, errors = validate_against_schema(data, CERTIFICATE_SCHEMA_FILE)
    if not is_valid:
        raise MalformedCertificateError('Malformed certificate: ' + '; '.join(errors))


def load_certificate(path: Union[str, Path]) -> Dict[str, Any]:
    """Reads and schema-checks a certificate document.

    Raises:
        MalformedCertificateError: If the file is not JSON or fails the schema.
    """
    try:
        data = load_json(path)
    except HyperlatError as e:
        raise MalformedCertificateError(str(e)) from e
    check_certificate_schema(data)
    return data


def certificate_from_dict(data: Dict[str, Any]) -> TransferCertificate:
    """Rebuilds a certificate by replaying the pipeline on its raw inputs.

    Raises:
        MalformedCertificateError: If the document fails the schema.
        HyperlatError: If the raw inputs are invalid or the replay fails.
    """
    check_certificate_schema(data)
    lattice_data = data['lattice']
    lattice = Lattice(decode_matrix(lattice_data['gram']), lattice_data.get('label'))
    embedding = make_embedding(lattice, decode_matrix(data['embedding']['basis']))
    f = Isometry(lattice, decode_matrix(data['isometry']['matrix']))
    chamber = data.get('chamber')
    ample = base = None
    require_chamber = True
    walk_cap = config.DEFAULT_WALK_CAP
    if chamber is not None:
        ample = decode_vector(chamber['ample'])
        base = decode_vector(chamber['base'])
        require_chamber = chamber['require_chamber']
        walk_cap = chamber['walk_cap']
    cap = max(config.DEFAULT_ORDER_CAP, decode_int(data['descent']['bound']))
    return transfer_salem(
        lattice, f, embedding,
        ample=ample,
        cap=cap,
        walk_cap=walk_cap,
        require_chamber=require_chamber,
        base=base,
    )


def verify_certificate_detailed(data: Dict[str, Any]) -> List[ValidationResult]:
    """Re-derives every claim of the certificate from its raw matrices.

    Raises:
        MalformedCertificateError: If the document fails the schema.
    """
    check_certificate_schema(data)
    results = CertificateValidator(data).validate_all()
    for result in results:
        if not result.passed:
            logger.warning("Certificate check %s failed: %s", result.name, result.message)
    return results


def verify_certificate(data: Dict[str, Any]) -> bool:
    """True iff every certificate check passes."""
    return all(result.passed for result in verify_certificate_detailed(data))
