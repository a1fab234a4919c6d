"""Independent re-verification of transfer certificates.

CertificateValidator recomputes every claim of a certificate document from
its raw matrices. Each check returns a ValidationResult instead of raising,
so a single run reports every discrepancy.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Dict, List, Optional

from hyperlat._internal.json_codec import (
    decode_fraction,
    decode_int,
    decode_matrix,
    decode_polynomial,
    decode_vector,
)
from hyperlat.exceptions import HyperlatError
from hyperlat.hasher import hash_matches
from hyperlat.lattice import Embedding, Isometry, Lattice, make_embedding
from hyperlat.polynomial import charpoly
from hyperlat.quotient import descent_profile, order_mod
from hyperlat.salem import FactorReport, analyze_polynomial
from hyperlat.transfer import align_interior, fixes_chamber
from hyperlat.weyl import separating_bounds
from hyperlat.writers.json_writer import report_to_dict, word_to_list


@dataclass
class ValidationResult:
    """Result of a validation check.

    Attributes:
        name: Name of validation check.
        passed: Whether validation passed.
        message: Optional error/warning message.
    """

    name: str
    passed: bool
    message: Optional[str] = None


class CheckFailed(Exception):
    """A recomputed quantity disagrees with the certificate."""


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise CheckFailed(message)


def report_from_dict(data: Dict[str, Any]) -> FactorReport:
    """Decodes a factor report as stored in a certificate."""
    salem = data.get('salem')
    quadratic = data.get('quadratic')
    oriented = salem or quadratic or {}
    return FactorReport(
        input=decode_polynomial(data['input']),
        cyclotomic=tuple((decode_int(c['n']), decode_int(c['mult'])) for c in data['cyclotomic']),
        salem_factor=decode_polynomial(salem) if salem else None,
        salem_multiplicity=decode_int(salem['mult']) if salem else 0,
        negated=bool(oriented.get('negated', False)),
        quadratic_factor=decode_polynomial(quadratic) if quadratic else None,
        quadratic_multiplicity=decode_int(quadratic['mult']) if quadratic else 0,
        residual=decode_polynomial(data['residual']),
        flags=tuple(data.get('flags', ())),
    )


class CertificateValidator:
    """Recomputes the claims of one certificate document.

    Intermediate objects are rebuilt lazily from the raw data; a check whose
    inputs cannot be rebuilt fails with the underlying error message.
    """

    def __init__(self, document: Dict[str, Any]):
        self.document = document

    @cached_property
    def lattice(self) -> Lattice:
        data = self.document['lattice']
        return Lattice(decode_matrix(data['gram']), data.get('label'))

    @cached_property
    def isometry(self) -> Isometry:
        return Isometry(self.lattice, decode_matrix(self.document['isometry']['matrix']))

    @cached_property
    def embedding(self) -> Embedding:
        return make_embedding(self.lattice, decode_matrix(self.document['embedding']['basis']))

    @cached_property
    def m(self) -> int:
        return decode_int(self.document['descent']['m'])

    @cached_property
    def power(self) -> Isometry:
        return Isometry(self.lattice, decode_matrix(self.document['descent']['power']))

    @cached_property
    def restricted(self) -> Isometry:
        matrix = decode_matrix(self.document['descent']['restricted'])
        return Isometry(self.embedding.sublattice, matrix)

    def _run(self, name: str, check: Callable[[], Optional[str]]) -> ValidationResult:
        try:
            message = check()
            return ValidationResult(name=name, passed=True, message=message)
        except CheckFailed as e:
            return ValidationResult(name=name, passed=False, message=str(e))
        except (HyperlatError, ArithmeticError, KeyError, TypeError, ValueError) as e:
            return ValidationResult(name=name, passed=False, message=f"{type(e).__name__}: {e}")

    def validate_all(self) -> List[ValidationResult]:
        return [
            self._run('content_hash', self._check_hash),
            self._run('lattice', self._check_lattice),
            self._run('isometry', self._check_isometry),
            self._run('embedding', self._check_embedding),
            self._run('isometry_report', self._check_isometry_report),
            self._run('descent', self._check_descent),
            self._run('restricted_report', self._check_restricted_report),
            self._run('degree_equality', self._check_degree_equality),
            self._run('chamber', self._check_chamber),
        ]

    def _check_hash(self) -> str:
        _expect(hash_matches(self.document), "Content hash does not match the document")
        return self.document['hash']

    def _check_lattice(self) -> str:
        rank = decode_int(self.document['lattice']['rank'])
        _expect(rank == self.lattice.rank, f"Stored rank {rank} differs from {self.lattice.rank}")
        return f"signature {self.lattice.signature}"

    def _check_isometry(self) -> str:
        return f"rank {self.isometry.matrix.nrows} isometry preserves the form"

    def _check_embedding(self) -> str:
        data = self.document['embedding']
        e = self.embedding
        _expect(decode_int(data['index']) == e.index, f"Index is {e.index}, not {data['index']}")
        _expect(decode_matrix(data['sub_gram']) == e.sub_gram, "Sublattice Gram matrix differs from BᵀGB")
        invariants = tuple(decode_int(x) for x in data['quotient_invariants'])
        _expect(invariants == e.quotient_invariants, f"Quotient invariants are {e.quotient_invariants}")
        return f"index {e.index}"

    def _check_report(self, matrix_owner: Isometry, poly_data, report_data, degree_data) -> str:
        chi = charpoly(matrix_owner.matrix)
        _expect(decode_polynomial(poly_data) == chi, "Stored characteristic polynomial is wrong")
        stored = report_from_dict(report_data)
        _expect(stored.input == chi, "Report input differs from the characteristic polynomial")
        _expect(stored.product() == chi, "Product of the reported factors differs from the input")
        expected = report_to_dict(analyze_polynomial(chi, matrix_owner.lattice.is_hyperbolic()))
        _expect(report_data == expected, "Factor report differs from the recomputed one")
        _expect(decode_int(degree_data) == expected['degree'], "Stored Salem degree is wrong")
        return f"Salem degree {expected['degree']}"

    def _check_isometry_report(self) -> str:
        data = self.document['isometry']
        return self._check_report(self.isometry, data['charpoly'], data['report'], data['salem_degree'])

    def _check_descent(self) -> str:
        data = self.document['descent']
        n = self.embedding.index
        m = self.m
        bound = decode_int(data['bound'])
        _expect(m >= 1, f"Exponent {m} is not positive")
        _expect(self.power.matrix == self.isometry.matrix.power(m), f"Stored power is not f^{m}")
        expected_bound = 1 if n == 1 else order_mod(self.isometry.matrix, n, max(bound, 1))
        _expect(bound == expected_bound, f"Bound is {expected_bound}, not {bound}")
        _expect(m <= bound, f"Exponent {m} exceeds the bound {bound}")
        profile = descent_profile(self.embedding, self.isometry, m)
        _expect(profile[-1], f"f^{m} does not preserve the sublattice")
        _expect(not any(profile[:-1]), f"A smaller power than {m} already preserves the sublattice")
        conjugated = self.embedding.inverse_basis @ self.power.matrix @ self.embedding.basis
        _expect(conjugated.is_integral(), "B⁻¹·f^m·B is not integral")
        _expect(conjugated.to_int_matrix() == self.restricted.matrix, "Restricted matrix is not B⁻¹·f^m·B")
        return f"m = {m} <= {bound}"

    def _check_restricted_report(self) -> str:
        data = self.document['descent']
        return self._check_report(
            self.restricted, data['restricted_charpoly'], data['restricted_report'],
            data['restricted_salem_degree'],
        )

    def _check_degree_equality(self) -> str:
        d1 = decode_int(self.document['isometry']['salem_degree'])
        d2 = decode_int(self.document['descent']['restricted_salem_degree'])
        _expect(d1 == d2, f"Salem degrees {d1} and {d2} differ")
        return f"both {d1}"

    def _check_chamber(self) -> str:
        data = self.document.get('chamber')
        if data is None:
            return "no chamber section"
        lattice, sub = self.lattice, self.embedding.sublattice
        a = lattice.vector(decode_vector(data['ample']))
        image = self.isometry.apply(a)
        _expect(decode_vector(data['image']) == image.coords, "Stored f(a) is wrong")
        f_fixes = fixes_chamber(lattice, a, image)
        _expect(data['f_fixes_chamber'] == f_fixes, f"f fixes the chamber of a: {f_fixes}")
        ambient_bounds = separating_bounds(lattice, a, image) if lattice.inner(a, image) > 0 else None
        _expect(_as_pair(data['ambient_bounds']) == ambient_bounds, "Ambient separating bounds differ")

        alignment = align_interior(self.embedding, a, decode_vector(data['base']), data['walk_cap'])
        _expect(decode_fraction(data['scale']) == alignment.scale, "Scale factor differs")
        _expect(decode_vector(data['ample_sub']) == alignment.ample_sub.coords, "a_N differs")
        _expect(data['word'] == word_to_list(alignment.walk.word), "Weyl word differs")
        _expect(decode_vector(data['walked_base']) == alignment.walk.endpoint.coords, "Walked base differs")
        _expect(data['walk_bounds'] == [list(b) for b in alignment.walk.bounds], "Walk bounds differ")

        image_sub = self.restricted.apply(alignment.ample_sub)
        _expect(decode_vector(data['image_sub']) == image_sub.coords, "Stored h_N(a_N) is wrong")
        h_fixes = fixes_chamber(sub, alignment.ample_sub, image_sub)
        _expect(data['h_fixes_chamber'] == h_fixes, f"h_N fixes the chamber of a_N: {h_fixes}")
        sub_bounds = (
            separating_bounds(sub, alignment.ample_sub, image_sub)
            if sub.inner(alignment.ample_sub, image_sub) > 0 else None
        )
        _expect(_as_pair(data['sub_bounds']) == sub_bounds, "Sublattice separating bounds differ")
        if data['require_chamber']:
            _expect(f_fixes and h_fixes, "Required chamber checks do not hold")
        return f"f fixes: {f_fixes}, h_N fixes: {h_fixes}"


def _as_pair(value: Any):
    return tuple(decode_int(x) for x in value) if value is not None else None
