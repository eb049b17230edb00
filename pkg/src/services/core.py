"""Core operations on finite join-, specialization and closure semilattices.

Axiom checks are exhaustive loops over the carrier, vectorized with numpy.
Every check returns an AxiomReport whose witnesses reproduce the violation;
constructions that need valid input raise StructureError instead.
"""

import itertools
import logging
import random
from functools import lru_cache
from typing import Iterable

import numpy as np

from src.config import DEFAULT_IDENTITY_SAMPLES
from src.models.errors import PreconditionError, StructureError
from src.models.report import AxiomReport
from src.models.semilattice import (
    ClosureSemilattice,
    JoinSemilattice,
    SpecSemilattice,
)
from src.utils.relation import compose, transitive_closure


logger = logging.getLogger(__name__)


def validate_join_table(join_semilattice: JoinSemilattice) -> AxiomReport:
    """Check idempotence, commutativity and associativity of a join table.

    Args:
        join_semilattice: Structure whose table is checked. Range errors are
            already rejected when the structure is constructed.

    Returns:
        AxiomReport: Violations tagged "idempotent" (x), "commutative" (x, y)
            with x < y, and "associative" (x, y, z).
    """
    report = AxiomReport(subject="join-semilattice")
    table = join_semilattice.join
    idx = np.arange(join_semilattice.size)

    for x in np.flatnonzero(np.diag(table) != idx):
        report.add("idempotent", x)

    for x, y in np.argwhere(table != table.T):
        if x < y:
            report.add("commutative", x, y)

    left = table[table[:, :, None], idx[None, None, :]]
    right = table[idx[:, None, None], table[None, :, :]]
    for x, y, z in np.argwhere(left != right):
        report.add("associative", x, y, z)

    return report


def require_valid_join_table(join_semilattice: JoinSemilattice) -> None:
    """Raise StructureError if the join table is not a semilattice."""
    report = validate_join_table(join_semilattice)
    if not report.ok:
        violation = report.violations[0]
        raise StructureError(
            f"Join table violates {violation.axiom} at {violation.witness}",
            witness=violation.witness,
        )


def leq(join_semilattice: JoinSemilattice, x: int, y: int) -> bool:
    """Induced order: x <= y iff join(x, y) = y."""
    x = join_semilattice.check_element(x)
    y = join_semilattice.check_element(y)
    return join_semilattice.leq(x, y)


def validate_specialization(structure: SpecSemilattice) -> AxiomReport:
    """Check the specialization axioms (S1)-(S3) and the derived (S4).

    Args:
        structure: Structure to check.

    Returns:
        AxiomReport: Violations tagged "S1" (x, y), "S2" (x, y, z),
            "S3" (x, y, z) with x <= y as indices, and "S4" (x).

    Raises:
        StructureError: If the base join table is not a semilattice.
    """
    require_valid_join_table(structure.base)

    report = AxiomReport(subject="specialization semilattice")
    spec = structure.spec
    order = structure.leq_matrix
    table = structure.base.join

    for x, y in np.argwhere(order & ~spec):
        report.add("S1", x, y)

    for x, z in np.argwhere(compose(spec, spec) & ~spec):
        y = np.flatnonzero(spec[x, :] & spec[:, z])[0]
        report.add("S2", x, y, z)

    for z in range(structure.size):
        below = spec[:, z]
        broken = below[:, None] & below[None, :] & ~spec[table, z]
        for x, y in np.argwhere(broken):
            if x <= y:
                report.add("S3", x, y, z)

    for x in np.flatnonzero(~np.diag(spec)):
        report.add("S4", x)

    return report


def require_valid_specialization(structure: SpecSemilattice) -> None:
    """Raise StructureError if structure is not a specialization semilattice."""
    report = validate_specialization(structure)
    if not report.ok:
        violation = report.violations[0]
        raise StructureError(
            f"Specialization relation violates {violation.axiom} at {violation.witness}",
            witness=violation.witness,
        )


def complete_specialization(
    join_semilattice: JoinSemilattice, seeds: Iterable[tuple[int, int]]
) -> SpecSemilattice:
    """Least specialization relation containing the order and the seed pairs.

    Computed as a monotone fixpoint: alternately close under transitivity
    (S2) and under joins of common lower elements (S3) until nothing changes.

    Args:
        join_semilattice: Valid join-semilattice.
        seeds: Pairs (x, y) that must satisfy x specialized by y.

    Returns:
        SpecSemilattice: Passes validate_specialization.
    """
    require_valid_join_table(join_semilattice)
    relation = join_semilattice.leq_matrix.copy()
    for x, y in seeds:
        relation[join_semilattice.check_element(x), join_semilattice.check_element(y)] = True

    table = join_semilattice.join
    rounds = 0
    while True:
        rounds += 1
        previous = relation.copy()
        relation = transitive_closure(relation)
        for z in range(join_semilattice.size):
            below = np.flatnonzero(relation[:, z])
            relation[table[np.ix_(below, below)].ravel(), z] = True
        if np.array_equal(relation, previous):
            break

    logger.debug(
        "Specialization completed",
        extra={"size": join_semilattice.size, "rounds": rounds},
    )
    return SpecSemilattice(base=join_semilattice, spec=relation)


def closure_of(structure: SpecSemilattice, a: int) -> int | None:
    """Closure of a: the maximum of the downset {b | b specialized by a}.

    The join m of the downset is computed first and then required to be a
    genuine maximum: m is specialized by a and lies above every member. This
    stays correct on structures that fail validation.

    Returns:
        int | None: Index of the closure, or None if no maximum exists.
    """
    a = structure.base.check_element(a)
    below = np.flatnonzero(structure.spec[:, a])
    if len(below) == 0:
        return None
    m = structure.base.join_all(int(b) for b in below)
    if not structure.spec[m, a]:
        return None
    if not structure.leq_matrix[below, m].all():
        return None
    return m


@lru_cache(maxsize=256)
def closure_table(structure: SpecSemilattice) -> tuple[int | None, ...]:
    """closure_of for every element, memoized per structure."""
    return tuple(closure_of(structure, a) for a in range(structure.size))


def is_principal(structure: SpecSemilattice) -> bool:
    """True iff every element has a closure."""
    return all(k is not None for k in closure_table(structure))


def to_closure_semilattice(structure: SpecSemilattice) -> ClosureSemilattice:
    """Closure semilattice with K(a) = closure_of(structure, a).

    Raises:
        PreconditionError: If some element has no closure.
    """
    table = closure_table(structure)
    missing = [a for a, k in enumerate(table) if k is None]
    if missing:
        raise PreconditionError(
            f"Structure is not principal: element {structure.labels[missing[0]]} "
            "has no closure"
        )
    return ClosureSemilattice(base=structure.base, closure=np.array(table))


def validate_closure(closure: ClosureSemilattice) -> AxiomReport:
    """Check that K is extensive, idempotent and isotone.

    Returns:
        AxiomReport: Violations tagged "extensive" (x), "idempotent" (x) and
            "isotone" (x, y) with x <= y but K(x) not <= K(y).
    """
    report = AxiomReport(subject="closure semilattice")
    k = closure.closure
    order = closure.base.leq_matrix
    idx = np.arange(closure.size)

    for x in np.flatnonzero(~order[idx, k]):
        report.add("extensive", x)
    for x in np.flatnonzero(k[k] != k):
        report.add("idempotent", x)
    for x, y in np.argwhere(order & ~order[k[:, None], k[None, :]]):
        report.add("isotone", x, y)

    return report


def is_additive(closure: ClosureSemilattice) -> bool:
    """True iff K(x v y) = K(x) v K(y) for all x, y."""
    k = closure.closure
    table = closure.base.join
    return bool((k[table] == table[k[:, None], k[None, :]]).all())


def to_specialization_semilattice(closure: ClosureSemilattice) -> SpecSemilattice:
    """Specialization semilattice with a specialized by b iff a <= K(b).

    Raises:
        StructureError: If the join table or the closure axioms fail.
    """
    require_valid_join_table(closure.base)
    report = validate_closure(closure)
    if not report.ok:
        violation = report.violations[0]
        raise StructureError(
            f"Closure map is not {violation.axiom} at {violation.witness}",
            witness=violation.witness,
        )
    return SpecSemilattice(base=closure.base, spec=closure.base.leq_matrix[:, closure.closure])


def check_closure_identity(
    closure: ClosureSemilattice,
    r: int,
    s: int,
    *,
    samples: int = DEFAULT_IDENTITY_SAMPLES,
    seed: int = 0,
) -> AxiomReport:
    """Check K(a1 v ... v ar v Kb1 v ... v Kbs) = K(a1 v ... v ar v b1 v ... v bs).

    Exhaustive over all (r + s)-tuples when there are at most `samples` of
    them, otherwise checks `samples` tuples drawn with a seeded generator.

    Returns:
        AxiomReport: Violations tagged "identity" with witness (a1..ar, b1..bs).

    Raises:
        ValueError: If r or s is negative or r + s < 1.
    """
    if r < 0 or s < 0 or r + s < 1:
        raise ValueError("check_closure_identity needs r, s >= 0 and r + s >= 1")

    report = AxiomReport(subject=f"closure identity r={r} s={s}")
    k = closure.closure
    base = closure.base
    n = closure.size
    width = r + s

    if n**width <= samples:
        tuples: Iterable[tuple[int, ...]] = itertools.product(range(n), repeat=width)
    else:
        rng = random.Random(seed)
        tuples = (
            tuple(rng.randrange(n) for _ in range(width)) for _ in range(samples)
        )

    checked = 0
    for t in tuples:
        checked += 1
        a, b = t[:r], t[r:]
        lhs = k[base.join_all([*a, *(int(k[x]) for x in b)])]
        rhs = k[base.join_all(t)]
        if lhs != rhs:
            report.add("identity", *t)

    logger.debug(
        "Closure identity checked",
        extra={"r": r, "s": s, "tuples": checked, "violations": len(report.violations)},
    )
    return report
