"""Exact lattice library: Salem degrees, sublattice descent and Weyl chambers.

hyperlat computes Salem degrees of isometries of integral lattices, restricts
powers of isometries to finite-index sublattices, and checks that chambers of
the positive cone are preserved. Every computation is exact.

Typical usage example:

    from hyperlat import load_lattice, load_isometry, load_embedding, transfer_salem

    lattice = load_lattice('fixtures/coxeter4.json')
    f = load_isometry('fixtures/coxeter4-salem.json', lattice)
    embedding = load_embedding('fixtures/coxeter4-index2.json', lattice)
    cert = transfer_salem(lattice, f, embedding)
    print(cert.m, cert.salem_degree)
"""

__version__ = "1.0.0"

# Public API exports
__all__ = [
    # Exceptions
    'HyperlatError',
    'InputError',
    'SalemAssertionFailure',
    'ChamberViolationError',
    'CapExceededError',
    'MalformedCertificateError',
    # Exact kernel
    'IntMatrix',
    'RatMatrix',
    'det',
    'hnf',
    'snf',
    'ldl',
    'solve_linear_diophantine',
    # Polynomials
    'IntPolynomial',
    'charpoly',
    'cyclotomic',
    'trace_poly',
    'sturm_count',
    # Lattices
    'Lattice',
    'LatticeVector',
    'Isometry',
    'Embedding',
    'make_embedding',
    'verify_isometry',
    # Salem
    'FactorReport',
    'SalemVerdict',
    'is_salem',
    'salem_degree',
    'strip_cyclotomic',
    # Quotient
    'order_mod',
    'stabilizing_power',
    # Weyl
    'Root',
    'WeylWord',
    'roots_with_pairing',
    'separating_roots',
    'chamber_walk',
    'same_chamber',
    # Transfer and certificates
    'TransferCertificate',
    'transfer_salem',
    'certificate_to_dict',
    'certificate_from_dict',
    'verify_certificate',
    'ValidationResult',
    # Loading
    'load_lattice',
    'load_isometry',
    'load_embedding',
]

from hyperlat.exceptions import (
    CapExceededError,
    ChamberViolationError,
    HyperlatError,
    InputError,
    MalformedCertificateError,
    SalemAssertionFailure,
)

from hyperlat.exact import (
    IntMatrix,
    RatMatrix,
    det,
    hnf,
    ldl,
    snf,
    solve_linear_diophantine,
)

from hyperlat.polynomial import (
    IntPolynomial,
    charpoly,
    cyclotomic,
    sturm_count,
    trace_poly,
)

from hyperlat.lattice import (
    Embedding,
    Isometry,
    Lattice,
    LatticeVector,
    make_embedding,
    verify_isometry,
)

from hyperlat.salem import FactorReport, SalemVerdict, is_salem, salem_degree, strip_cyclotomic

from hyperlat.quotient import order_mod, stabilizing_power

from hyperlat.weyl import Root, WeylWord, chamber_walk, roots_with_pairing, same_chamber, separating_roots

from hyperlat.transfer import TransferCertificate, transfer_salem

from hyperlat.certificate import certificate_from_dict, certificate_to_dict, verify_certificate

from hyperlat.validator import ValidationResult

from hyperlat.loaders import load_embedding, load_isometry, load_lattice
