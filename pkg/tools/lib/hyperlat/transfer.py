"""Transfer of Salem degrees to finite-index sublattices.

Given an isometry f of L and a same-rank sublattice N, the pipeline finds the
least power f^m preserving N, restricts it, and checks that the restriction
has the same Salem degree. When an interior (ample) class is supplied, the
chamber containing it stands in for the nef cone: f must fix that chamber in
L, and the restriction must fix the corresponding chamber in N.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from hyperlat import config
from hyperlat.exceptions import ChamberViolationError, LatticeMismatchError, SalemAssertionFailure
from hyperlat.lattice import (
    Embedding,
    Isometry,
    Lattice,
    LatticeVector,
    VectorLike,
    inner,
    require_hyperbolic,
    require_positive,
    warn_if_odd,
)
from hyperlat.quotient import StabilizingPower, stabilizing_power
from hyperlat.salem import FactorReport, salem_degree
from hyperlat.weyl import ChamberWalk, chamber_walk, same_chamber, separating_bounds

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Alignment:
    """An ambient interior class carried into the sublattice.

    Attributes:
        ample: The class a in L.
        scale: Positive rational with ample_sub = scale · B⁻¹a.
        ample_sub: Primitive N-coordinates on the ray of a.
        base: Reference class of N the walk starts from.
        walk: Chamber walk in N from base to ample_sub.
    """

    ample: LatticeVector
    scale: Fraction
    ample_sub: LatticeVector
    base: LatticeVector
    walk: ChamberWalk


def align_interior(
    embedding: Embedding,
    ample: VectorLike,
    base: Optional[VectorLike] = None,
    cap: int = config.DEFAULT_WALK_CAP
) -> Alignment:
    """Expresses a in N-coordinates and walks N's base class into its chamber.

    index · B⁻¹a is integral because index · L ⊆ N; dividing by the gcd gives
    the primitive vector on the same ray, which lies in the same chambers.

    Raises:
        NotHyperbolicError: If L is not of signature (1, rank - 1).
        NotPositiveError: If a² <= 0.
    """
    ambient, sub = embedding.ambient, embedding.sublattice
    require_hyperbolic(ambient)
    ample = require_positive(ambient, ample, 'ample class')
    scaled = [embedding.index * c for c in embedding.to_sub_coords(ample)]
    integral = [int(c) for c in scaled]
    g = math.gcd(*integral)
    ample_sub = sub.vector(tuple(c // g for c in integral))
    scale = Fraction(embedding.index, g)
    start = sub.coerce(base) if base is not None else ample_sub
    walk = chamber_walk(sub, start, ample_sub, cap)
    logger.info(
        "Aligned ample class %s to %s in the sublattice (%d reflections)",
        list(ample.coords), list(ample_sub.coords), len(walk.word),
    )
    return Alignment(ample, scale, ample_sub, start, walk)


def fixes_chamber(lattice: Lattice, v: LatticeVector, image: LatticeVector) -> bool:
    """True iff the image lies in the positive cone and closed chamber of v."""
    if inner(lattice, v, image) <= 0:
        return False
    return same_chamber(lattice, v, image)


def _bounds_if_same_cone(lattice: Lattice, v: LatticeVector, w: LatticeVector) -> Optional[Tuple[int, int]]:
    if inner(lattice, v, w) <= 0:
        return None
    return separating_bounds(lattice, v, w)


@dataclass(frozen=True)
class ChamberSection:
    """Chamber checks of a transfer run.

    Attributes:
        alignment: The ample class in L and N with the sublattice walk.
        image: f(a) in L.
        image_sub: h_N(a_N) in N.
        f_fixes_chamber: Whether f fixes the chamber of a in L.
        h_fixes_chamber: Whether h_N fixes the chamber of a_N in N.
        ambient_bounds: Separating-root bounds for (a, f(a)), if same cone.
        sub_bounds: Separating-root bounds for (a_N, h_N(a_N)), if same cone.
        require_chamber: Whether a failed check is an error.
        walk_cap: Cap on reflections used for the alignment walk.
    """

    alignment: Alignment
    image: LatticeVector
    image_sub: LatticeVector
    f_fixes_chamber: bool
    h_fixes_chamber: bool
    ambient_bounds: Optional[Tuple[int, int]]
    sub_bounds: Optional[Tuple[int, int]]
    require_chamber: bool
    walk_cap: int = config.DEFAULT_WALK_CAP


@dataclass(frozen=True)
class TransferCertificate:
    """Replayable record of one transfer run.

    Attributes:
        embedding: The sublattice N ⊆ L (its ambient is L).
        isometry: f on L.
        report: Factor report of f.
        stabilizing: m, its bound, h = f^m and the restriction h_N.
        restricted_report: Factor report of h_N.
        chamber: Chamber checks, when an ample class was given.
        tool_version: Version of the producing tool.
    """

    embedding: Embedding
    isometry: Isometry
    report: FactorReport
    stabilizing: StabilizingPower
    restricted_report: FactorReport
    chamber: Optional[ChamberSection] = None
    tool_version: str = config.TOOL_VERSION

    @property
    def lattice(self) -> Lattice:
        return self.embedding.ambient

    @property
    def salem_degree(self) -> int:
        return self.report.degree

    @property
    def restricted_salem_degree(self) -> int:
        return self.restricted_report.degree

    @property
    def m(self) -> int:
        return self.stabilizing.m


def transfer_salem(
    lattice: Lattice,
    f: Isometry,
    embedding: Embedding,
    ample: Optional[VectorLike] = None,
    cap: int = config.DEFAULT_ORDER_CAP,
    walk_cap: int = config.DEFAULT_WALK_CAP,
    require_chamber: bool = True,
    base: Optional[VectorLike] = None
) -> TransferCertificate:
    """Runs the transfer pipeline and returns its certificate.

    Args:
        lattice: The ambient lattice L.
        f: An isometry of L.
        embedding: A finite-index sublattice of L.
        ample: Optional interior class of L whose chamber f should fix.
        cap: Cap for the order of f modulo the index.
        walk_cap: Cap on chamber-walk reflections.
        require_chamber: Raise when a chamber check fails.
        base: Reference class of N for the alignment walk.

    Raises:
        LatticeMismatchError: If f or the embedding live on another lattice.
        CapExceededError: If the order of f modulo the index exceeds cap.
        ChamberViolationError: If a chamber check fails and is required.
        SalemAssertionFailure: If the Salem degrees of f and h_N differ.
    """
    if f.lattice != lattice or embedding.ambient != lattice:
        raise LatticeMismatchError("Isometry, embedding and lattice do not match")
    warn_if_odd(lattice)

    degree, report = salem_degree(f)
    logger.info("Salem degree of f: %d", degree)

    chamber_f = None
    if ample is not None:
        require_hyperbolic(lattice)
        a = require_positive(lattice, ample, 'ample class')
        image = f.apply(a)
        chamber_f = (a, image, fixes_chamber(lattice, a, image))
        if require_chamber and not chamber_f[2]:
            raise ChamberViolationError(
                f"f moves the chamber of {list(a.coords)} to that of {list(image.coords)}"
            )

    stabilizing = stabilizing_power(embedding, f, cap)
    restricted_degree, restricted_report = salem_degree(stabilizing.restricted)
    logger.info(
        "Restriction of f^%d has Salem degree %d", stabilizing.m, restricted_degree
    )
    if restricted_degree != degree:
        raise SalemAssertionFailure(
            f"Salem degree {restricted_degree} of the restriction differs from {degree}"
        )

    chamber = None
    if chamber_f is not None:
        a, image, f_fixes = chamber_f
        alignment = align_interior(embedding, a, base, walk_cap)
        sub = embedding.sublattice
        image_sub = stabilizing.restricted.apply(alignment.ample_sub)
        h_fixes = fixes_chamber(sub, alignment.ample_sub, image_sub)
        if require_chamber and not h_fixes:
            raise ChamberViolationError(
                f"Restriction moves the sublattice chamber of {list(alignment.ample_sub.coords)}"
            )
        chamber = ChamberSection(
            alignment=alignment,
            image=image,
            image_sub=image_sub,
            f_fixes_chamber=f_fixes,
            h_fixes_chamber=h_fixes,
            ambient_bounds=_bounds_if_same_cone(lattice, a, image),
            sub_bounds=_bounds_if_same_cone(sub, alignment.ample_sub, image_sub),
            require_chamber=require_chamber,
            walk_cap=walk_cap,
        )

    return TransferCertificate(
        embedding=embedding,
        isometry=f,
        report=report,
        stabilizing=stabilizing,
        restricted_report=restricted_report,
        chamber=chamber,
    )
