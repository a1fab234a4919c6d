"""Command-line interface for hyperlat.

Every subcommand prints a JSON document on stdout and logs to stderr. Exit
codes: 0 success, 1 a mathematical assertion failed or a certificate was
rejected, 2 invalid input, 3 an iteration cap was exhausted.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from hyperlat import config
from hyperlat._internal.json_codec import decode_matrix, encode_polynomial, encode_vector
from hyperlat.certificate import certificate_to_dict, load_certificate, verify_certificate_detailed
from hyperlat.config import JobConfig
from hyperlat.exceptions import HyperlatError, InputError
from hyperlat.fixtures import list_fixtures
from hyperlat.lattice import Lattice, LatticeVector
from hyperlat.loaders import load_embedding, load_isometry, load_json, load_lattice, load_vector
from hyperlat.logging_setup import configure_logging
from hyperlat.polynomial import charpoly, format_polynomial
from hyperlat.quotient import order_mod
from hyperlat.salem import salem_degree
from hyperlat.transfer import transfer_salem
from hyperlat.weyl import chamber_walk, roots_in_box, roots_with_pairing
from hyperlat.writers.json_writer import report_to_dict, roots_to_list, walk_to_dict, write_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_REJECTED = 1


def emit(document: Dict[str, Any]) -> None:
    """Writes a result document to stdout."""
    sys.stdout.write(write_json(document, None))


def resolve_vector(reference: str, lattice: Lattice) -> LatticeVector:
    """Reads a vector literal, a vector file, or a ``fixture:NAME`` reference."""
    if reference.startswith(config.FIXTURE_PREFIX):
        return load_vector(reference, lattice, config.resolve_input(reference))
    return load_vector(reference, lattice)


def cmd_salem_degree(args: argparse.Namespace, job: JobConfig) -> int:
    """Handles the 'salem-degree' command."""
    lattice = load_lattice(job.inputs['lattice'])
    f = load_isometry(job.inputs['isometry'], lattice)
    degree, report = salem_degree(f)
    document = report_to_dict(report)
    document['lattice'] = lattice.label
    document['text'] = format_polynomial(report.input)
    emit(document)
    return EXIT_OK


def cmd_transfer(args: argparse.Namespace, job: JobConfig) -> int:
    """Handles the 'transfer' command."""
    lattice = load_lattice(job.inputs['lattice'])
    f = load_isometry(job.inputs['isometry'], lattice)
    embedding = load_embedding(job.inputs['embedding'], lattice)
    ample = resolve_vector(args.ample, lattice) if args.ample else None
    base = resolve_vector(args.base, embedding.sublattice) if args.base else None
    cert = transfer_salem(
        lattice, f, embedding,
        ample=ample,
        cap=job.cap_order,
        walk_cap=job.cap_walk,
        require_chamber=not job.no_chamber,
        base=base,
    )
    document = certificate_to_dict(cert)
    if job.output is None:
        emit(document)
    else:
        write_json(document, job.output)
        logger.info("Certificate written to %s", job.output)
        emit({
            'certificate': str(job.output),
            'hash': document['hash'],
            'm': cert.m,
            'salem_degree': cert.salem_degree,
            'restricted_salem_degree': cert.restricted_salem_degree,
        })
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, job: JobConfig) -> int:
    """Handles the 'verify' command."""
    document = load_certificate(job.inputs['certificate'])
    results = verify_certificate_detailed(document)
    verified = all(r.passed for r in results)
    emit({
        'verified': verified,
        'checks': [
            {'name': r.name, 'passed': r.passed, 'message': r.message} for r in results
        ],
    })
    return EXIT_OK if verified else EXIT_REJECTED


def cmd_roots(args: argparse.Namespace, job: JobConfig) -> int:
    """Handles the 'roots' command."""
    lattice = load_lattice(job.inputs['lattice'])
    v = resolve_vector(args.vector, lattice)
    roots = roots_with_pairing(lattice, v, args.pairing)
    document = {
        'lattice': lattice.label,
        'vector': encode_vector(v.coords),
        'pairing': args.pairing,
        'roots': roots_to_list(roots),
    }
    if job.enumeration_radius is not None:
        box = roots_in_box(lattice, job.enumeration_radius, v, args.pairing)
        inside = sorted(r.coords for r in roots if max(abs(c) for c in r.coords) <= job.enumeration_radius)
        document['audit'] = {'radius': job.enumeration_radius, 'agrees': box == inside}
        if box != inside:
            logger.error("Box enumeration of radius %d disagrees", job.enumeration_radius)
            emit(document)
            return EXIT_REJECTED
    emit(document)
    return EXIT_OK


def cmd_walk(args: argparse.Namespace, job: JobConfig) -> int:
    """Handles the 'walk' command."""
    lattice = load_lattice(job.inputs['lattice'])
    v = resolve_vector(args.start, lattice)
    w = resolve_vector(args.target, lattice)
    emit(walk_to_dict(chamber_walk(lattice, v, w, job.cap_walk)))
    return EXIT_OK


def cmd_order_mod(args: argparse.Namespace, job: JobConfig) -> int:
    """Handles the 'order-mod' command."""
    data = load_json(job.inputs['matrix'])
    if not isinstance(data, dict) or 'matrix' not in data:
        raise InputError(f"{job.inputs['matrix']} has no 'matrix' entry")
    matrix = decode_matrix(data['matrix'])
    emit({'modulus': args.modulus, 'order': order_mod(matrix, args.modulus, job.cap_order)})
    return EXIT_OK


def cmd_signature(args: argparse.Namespace, job: JobConfig) -> int:
    """Handles the 'signature' command."""
    lattice = load_lattice(job.inputs['lattice'])
    n_plus, n_minus = lattice.signature
    emit({
        'lattice': lattice.label,
        'rank': lattice.rank,
        'signature': [n_plus, n_minus],
        'determinant': lattice.determinant,
        'even': lattice.is_even(),
        'hyperbolic': lattice.is_hyperbolic(),
    })
    return EXIT_OK


def cmd_charpoly(args: argparse.Namespace, job: JobConfig) -> int:
    """Handles the 'charpoly' command."""
    data = load_json(job.inputs['matrix'])
    if not isinstance(data, dict) or 'matrix' not in data:
        raise InputError(f"{job.inputs['matrix']} has no 'matrix' entry")
    chi = charpoly(decode_matrix(data['matrix']))
    document = encode_polynomial(chi)
    document['text'] = format_polynomial(chi)
    emit(document)
    return EXIT_OK


def cmd_fixtures(args: argparse.Namespace, job: JobConfig) -> int:
    """Handles the 'fixtures' command."""
    emit({'fixtures': [
        {'name': f.name, 'kind': f.kind, 'lattice': f.lattice, 'description': f.description}
        for f in list_fixtures()
    ]})
    return EXIT_OK


def _add_lattice(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--lattice", required=True,
        help="Lattice JSON file or fixture:NAME.",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperlat",
        description="Exact Salem degrees, sublattice descent and chamber checks for integral lattices.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Salem degree of a bundled isometry
  hyperlat salem-degree --lattice fixture:coxeter4 --isometry fixture:coxeter4-salem

  # Transfer to an index-2 sublattice and write a certificate
  hyperlat transfer --lattice fixture:coxeter4 --isometry fixture:coxeter4-salem \\
      --embedding fixture:coxeter4-index2 --output cert.json

  # Re-check a certificate
  hyperlat verify cert.json

  # Roots of U orthogonal to (1,1), and a chamber walk
  hyperlat roots --lattice fixture:U --vector "[1,1]" --pairing 0
  hyperlat walk --lattice fixture:U --from "[2,1]" --to "[1,2]"
        """,
    )
    parser.add_argument("--quiet", action="store_true", help="Only log warnings and errors.")
    parser.add_argument("--verbose", action="store_true", help="Log debug details.")
    parser.add_argument("--log-json", action="store_true", help="Log JSON lines to stderr.")
    parser.add_argument("--config", help="YAML job file with caps and flags.")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")
    subparsers.required = True

    salem_parser = subparsers.add_parser(
        "salem-degree",
        help="Factor the characteristic polynomial of an isometry.",
    )
    _add_lattice(salem_parser)
    salem_parser.add_argument("--isometry", required=True, help="Isometry JSON file.")
    salem_parser.set_defaults(func=cmd_salem_degree)

    transfer_parser = subparsers.add_parser(
        "transfer",
        help="Restrict a power of an isometry to a sublattice and certify the Salem degree.",
    )
    _add_lattice(transfer_parser)
    transfer_parser.add_argument("--isometry", required=True, help="Isometry JSON file.")
    transfer_parser.add_argument("--embedding", required=True, help="Embedding JSON file.")
    transfer_parser.add_argument("--ample", help="Interior class of the ambient lattice.")
    transfer_parser.add_argument("--base", help="Reference class of the sublattice for the alignment walk.")
    transfer_parser.add_argument("--no-chamber", action="store_true", help="Report chamber checks without requiring them.")
    transfer_parser.add_argument("--output", "-o", help="Certificate output path (default: stdout).")
    transfer_parser.add_argument("--cap-order", type=int, help="Cap for the order modulo the index.")
    transfer_parser.add_argument("--cap-walk", type=int, help="Cap on chamber-walk reflections.")
    transfer_parser.set_defaults(func=cmd_transfer)

    verify_parser = subparsers.add_parser("verify", help="Re-check a transfer certificate.")
    verify_parser.add_argument("certificate", help="Certificate JSON file.")
    verify_parser.set_defaults(func=cmd_verify)

    roots_parser = subparsers.add_parser("roots", help="List roots with a given pairing.")
    _add_lattice(roots_parser)
    roots_parser.add_argument("--vector", required=True, help="Positive vector, e.g. \"[1,1]\".")
    roots_parser.add_argument("--pairing", type=int, required=True, help="Required value of δ·v.")
    roots_parser.add_argument("--radius", type=int, dest="enumeration_radius", help="Audit against a box enumeration of this radius.")
    roots_parser.set_defaults(func=cmd_roots)

    walk_parser = subparsers.add_parser("walk", help="Walk a positive vector into the chamber of another.")
    _add_lattice(walk_parser)
    walk_parser.add_argument("--from", dest="start", required=True, help="Starting vector.")
    walk_parser.add_argument("--to", dest="target", required=True, help="Target vector.")
    walk_parser.add_argument("--cap-walk", type=int, help="Cap on reflections.")
    walk_parser.set_defaults(func=cmd_walk)

    order_parser = subparsers.add_parser("order-mod", help="Order of a matrix modulo n.")
    order_parser.add_argument("--matrix", required=True, help="JSON file with a 'matrix' entry.")
    order_parser.add_argument("--modulus", type=int, required=True, help="The modulus n >= 2.")
    order_parser.add_argument("--cap-order", type=int, help="Largest order searched.")
    order_parser.set_defaults(func=cmd_order_mod)

    signature_parser = subparsers.add_parser("signature", help="Signature of a lattice.")
    _add_lattice(signature_parser)
    signature_parser.set_defaults(func=cmd_signature)

    charpoly_parser = subparsers.add_parser("charpoly", help="Characteristic polynomial of a matrix.")
    charpoly_parser.add_argument("--matrix", required=True, help="JSON file with a 'matrix' entry.")
    charpoly_parser.set_defaults(func=cmd_charpoly)

    fixtures_parser = subparsers.add_parser("fixtures", help="List bundled fixtures.")
    fixtures_parser.set_defaults(func=cmd_fixtures)

    return parser


_INPUT_ROLES = ('lattice', 'isometry', 'embedding', 'certificate', 'matrix')
_FLAG_NAMES = ('cap_order', 'cap_walk', 'enumeration_radius', 'no_chamber', 'quiet', 'log_json')


def build_job(args: argparse.Namespace) -> JobConfig:
    """Layers the YAML job file under the parsed command-line flags."""
    inputs = {role: getattr(args, role, None) for role in _INPUT_ROLES}
    flags = {name: getattr(args, name, None) for name in _FLAG_NAMES}
    return JobConfig.from_sources(
        command=args.command,
        inputs=inputs,
        output=getattr(args, 'output', None),
        flags=flags,
        config_path=Path(args.config) if args.config else None,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """The main command-line interface entry point."""
    args = build_parser().parse_args(argv)
    configure_logging(quiet=args.quiet, log_json=args.log_json, verbose=args.verbose)
    try:
        job = build_job(args)
        if job.quiet != args.quiet or job.log_json != args.log_json:
            configure_logging(quiet=job.quiet, log_json=job.log_json, verbose=args.verbose)
        return args.func(args, job)
    except HyperlatError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return e.exit_code
    except json.JSONDecodeError as e:
        logger.error("Invalid JSON: %s", e)
        return InputError.exit_code


if __name__ == "__main__":
    sys.exit(main())
