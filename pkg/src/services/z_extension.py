"""The principal extension that preserves a designated set Z of closures.

Relative to Z, p = (a, B) precedes q = (c, D) iff

    (c1) (a, {}) precedes q in the plain sense
    (c2) every b in B is either specialized by some d in D, or lies below
         some z in Z whose pair (z, {}) precedes q

With Z empty this is the plain relation. Join, closure and specialization on
the classes use the same formulas as the free extension, and whenever
K a = z is in Z the classes of (z, {}) and (a, {a}) coincide, so the
embedding maps the closure of a to the closure of its image.
"""

import logging
from typing import Iterable

import numpy as np

from src.config import (
    DEFAULT_EXTENSION_CAP,
    DEFAULT_SELF_CHECK_LIMIT,
    DEFAULT_WORKERS,
)
from src.models.closure_set import ClosureSet
from src.models.errors import (
    HomomorphismError,
    InvariantViolationError,
    PreconditionError,
)
from src.models.extension import Extension
from src.models.homomorphism import HomKind, Homomorphism
from src.models.pair import Pair
from src.models.report import AxiomReport
from src.models.semilattice import SpecSemilattice
from src.services.core import closure_table
from src.services.free_extension import (
    build_extension,
    lift_checked,
    lift_hom,
    preceq,
)
from src.services.homomorphisms import check_homomorphism, require_homomorphism


logger = logging.getLogger(__name__)


def _require_same_base(structure: SpecSemilattice, z: ClosureSet) -> None:
    if z.base != structure:
        raise PreconditionError("Closure set belongs to a different structure")


def all_closures(structure: SpecSemilattice) -> ClosureSet:
    """Every element that is its own closure."""
    table = closure_table(structure)
    return ClosureSet.of(structure, (a for a, k in enumerate(table) if k == a))


def preceq_z(structure: SpecSemilattice, z: ClosureSet, p: Pair, q: Pair) -> bool:
    """Decide p precedes q relative to the designated closures z."""
    _require_same_base(structure, z)
    if not preceq(structure, Pair.of(p.a), q):
        return False
    q = q.check(structure.size)
    base = structure.base

    def absorbed(b: int) -> bool:
        if any(structure.spec[b, d] for d in q.bs):
            return True
        return any(
            base.leq(b, zi) and preceq(structure, Pair.of(zi), q) for zi in z
        )

    return all(absorbed(b) for b in p.check(structure.size).bs)


def equivalent_z(structure: SpecSemilattice, z: ClosureSet, p: Pair, q: Pair) -> bool:
    return preceq_z(structure, z, p, q) and preceq_z(structure, z, q, p)


def build_z_extension(
    structure: SpecSemilattice,
    z: ClosureSet,
    *,
    cap: int = DEFAULT_EXTENSION_CAP,
    normalize: bool = False,
    workers: int = DEFAULT_WORKERS,
    self_check_limit: int = DEFAULT_SELF_CHECK_LIMIT,
) -> Extension:
    """Build the principal extension whose embedding preserves the closures in z.

    Raises:
        PreconditionError: If z belongs to another structure.
        CapExceededError: If |S| exceeds cap.
        InvariantViolationError: If the embedding fails to preserve z (only
            checked when the pair space is within self_check_limit).
    """
    _require_same_base(structure, z)
    extension = build_extension(
        structure,
        z.members,
        cap=cap,
        normalize=normalize,
        workers=workers,
        self_check_limit=self_check_limit,
    )
    if extension.space.size <= self_check_limit:
        upsilon = Homomorphism(
            dom=structure, cod=extension.result, table=extension.upsilon, kind=HomKind.EMBEDDING
        )
        report = check_closure_preservation(structure, z, upsilon)
        if not report.ok:
            raise InvariantViolationError(
                f"Embedding does not preserve designated closure at {report.violations[0].witness}"
            )
    return extension


def check_closure_preservation(
    structure: SpecSemilattice, z: ClosureSet, f: Homomorphism
) -> AxiomReport:
    """Check f(K a) = K f(a) for every a whose closure lies in z.

    Returns:
        AxiomReport: Violations tagged "closure" with witness (a,).
    """
    _require_same_base(structure, z)
    report = AxiomReport(subject="closure preservation")
    source_k = closure_table(structure)
    target_k = closure_table(f.cod)
    for a in range(structure.size):
        if source_k[a] is None or source_k[a] not in z:
            continue
        image_k = target_k[f(a)]
        if image_k is None or f(source_k[a]) != image_k:
            report.add("closure", a)
    return report


def _require_preserving(structure: SpecSemilattice, z: ClosureSet, eta: Homomorphism) -> None:
    report = check_closure_preservation(structure, z, eta)
    if not report.ok:
        a = report.violations[0].witness[0]
        raise HomomorphismError(
            f"Map does not preserve the closure of {structure.labels[a]}",
            witness=report.violations[0].witness,
        )


def lift_hom_z(
    extension: Extension,
    target: SpecSemilattice,
    eta: Homomorphism | Iterable[int],
    z: ClosureSet,
) -> Homomorphism:
    """The unique K-hom g from the Z-extension into target with upsilon;g = eta.

    Raises:
        PreconditionError: If target is not principal or the extension was
            built for a different z.
        HomomorphismError: If eta is not a spec-hom or does not preserve the
            closures in z (with witness).
    """
    if extension.z != z.members:
        raise PreconditionError(
            f"Extension was built for Z={sorted(extension.z)}, not Z={z.sorted()}"
        )
    _require_same_base(extension.base, z)
    if any(k is None for k in closure_table(target)):
        raise PreconditionError("Target structure is not principal")

    table = eta.table if isinstance(eta, Homomorphism) else list(eta)
    eta = require_homomorphism(extension.base, target, table, HomKind.SPEC)
    _require_preserving(extension.base, z, eta)
    return lift_checked(extension, target, eta)


def quotient_map(plain: Extension, extension_z: Extension) -> Homomorphism:
    """Surjective K-hom sending each plain class to the Z-class containing it.

    Raises:
        PreconditionError: If the extensions are over different structures or
            plain is itself a Z-extension.
    """
    if plain.z:
        raise PreconditionError("First extension must be the plain extension")
    if plain.base != extension_z.base:
        raise PreconditionError("Extensions are over different structures")

    table = np.array(
        [extension_z.class_of(plain.representative(c)) for c in range(plain.size)],
        dtype=np.int64,
    )
    report = check_homomorphism(plain.result, extension_z.result, table, HomKind.K_HOM)
    if not report.ok:
        violation = report.violations[0]
        raise InvariantViolationError(
            f"Quotient map is not a K-hom: {violation.axiom} at {violation.witness}"
        )
    missed = sorted(set(range(extension_z.size)) - set(int(v) for v in table))
    if missed:
        raise InvariantViolationError(
            f"Quotient map misses class {extension_z.label(missed[0])}"
        )
    return Homomorphism(
        dom=plain.result, cod=extension_z.result, table=table, kind=HomKind.K_HOM
    )


def lift_hom_z_via_quotient(
    plain: Extension,
    extension_z: Extension,
    target: SpecSemilattice,
    eta: Homomorphism | Iterable[int],
    z: ClosureSet,
) -> Homomorphism:
    """Z-lift computed by lifting to the plain extension and passing to the quotient.

    Raises:
        HomomorphismError: If eta does not preserve the closures in z.
        InvariantViolationError: If the plain lift is not constant on the
            fibres of the quotient map.
    """
    table = eta.table if isinstance(eta, Homomorphism) else list(eta)
    eta = require_homomorphism(plain.base, target, table, HomKind.SPEC)
    _require_preserving(plain.base, z, eta)

    plain_lift = lift_hom(plain, target, eta)
    quotient = quotient_map(plain, extension_z)

    values = np.full(extension_z.size, -1, dtype=np.int64)
    for c in range(plain.size):
        d = quotient(c)
        if values[d] == -1:
            values[d] = plain_lift(c)
        elif values[d] != plain_lift(c):
            raise InvariantViolationError(
                f"Plain lift does not pass to the quotient at class {extension_z.label(d)}"
            )
    return Homomorphism(dom=extension_z.result, cod=target, table=values, kind=HomKind.K_HOM)
