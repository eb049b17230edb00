"""Builders for standard example structures and a seeded random generator.

Covers finite topological spaces given by a preorder (K = down-closure),
inclusion modulo an ideal of subsets (the finite stand-in for inclusion
modulo finite sets), specializations pulled back along a join homomorphism,
chains, and random union-closed families.
"""

import logging
import random
from typing import Iterable, Sequence

import numpy as np

from src.config import DEFAULT_CORE_CAP, DEFAULT_POWERSET_CAP
from src.models.errors import CapExceededError, HomomorphismError, StructureError
from src.models.homomorphism import Homomorphism, HomKind
from src.models.powerset import GroundSet, Ideal
from src.models.semilattice import (
    ClosureSemilattice,
    JoinSemilattice,
    SpecSemilattice,
    base_of,
)
from src.services.core import complete_specialization, to_specialization_semilattice
from src.utils.bitset import mask_of, members, popcount
from src.utils.relation import is_reflexive, transitivity_witness


logger = logging.getLogger(__name__)


def _check_powerset_cap(n: int, cap: int) -> None:
    if n < 0:
        raise StructureError(f"Ground set size must be non-negative, got {n}")
    if n > cap:
        raise CapExceededError(
            f"Powerset of a {n}-point ground set exceeds the powerset cap",
            limit=cap,
            estimate=n,
        )


def powerset_semilattice(n: int, *, cap: int = DEFAULT_POWERSET_CAP) -> JoinSemilattice:
    """Subsets of an n-point ground set under union.

    Element m is the subset with bitmask m, labelled {p,q,...}.

    Raises:
        CapExceededError: If n exceeds cap.
    """
    _check_powerset_cap(n, cap)
    return GroundSet(n).powerset()


def _preorder_matrix(n: int, pre: np.ndarray | Iterable[tuple[int, int]]) -> np.ndarray:
    if isinstance(pre, np.ndarray):
        relation = np.array(pre, dtype=bool)
        if relation.shape != (n, n):
            raise StructureError(
                f"Preorder must have shape ({n}, {n}), got {relation.shape}"
            )
        return relation
    relation = np.zeros((n, n), dtype=bool)
    for x, y in pre:
        if not (0 <= x < n and 0 <= y < n):
            raise StructureError(
                f"Preorder pair ({x}, {y}) is outside the ground set 0..{n - 1}",
                witness=(x, y),
            )
        relation[x, y] = True
    return relation


def powerset_from_preorder(
    n: int,
    pre: np.ndarray | Iterable[tuple[int, int]],
    *,
    cap: int = DEFAULT_POWERSET_CAP,
) -> tuple[SpecSemilattice, ClosureSemilattice]:
    """Finite topological space whose closed sets are the down-sets of pre.

    Args:
        n: Number of points.
        pre: Preorder on the points; (x, y) reads "x lies below y". Either an
            n x n boolean matrix or an iterable of pairs (loops included).
        cap: Maximum n.

    Returns:
        tuple: (specialization semilattice, closure semilattice) on the
            powerset, with K(A) the down-closure of A and A specialized by B
            iff A is contained in K(B).

    Raises:
        StructureError: If pre is not reflexive (witness (x,)) or not
            transitive (witness (x, y, z)).

    Examples:
        >>> spec, closure = powerset_from_preorder(2, [(0, 0), (1, 1), (1, 0)])
        >>> closure.k(0b01), closure.k(0b10)
        (3, 2)
    """
    _check_powerset_cap(n, cap)
    relation = _preorder_matrix(n, pre)

    if not is_reflexive(relation):
        x = int(np.flatnonzero(~np.diag(relation))[0])
        raise StructureError(f"Preorder is not reflexive at point {x}", witness=(x,))
    witness = transitivity_witness(relation)
    if witness is not None:
        raise StructureError(f"Preorder is not transitive at {witness}", witness=witness)

    below = [mask_of(np.flatnonzero(relation[:, a])) for a in range(n)]
    join = GroundSet(n).powerset()
    k = np.zeros(join.size, dtype=np.int64)
    for m in range(join.size):
        for a in members(m):
            k[m] |= below[a]

    closure = ClosureSemilattice(base=join, closure=k)
    return to_specialization_semilattice(closure), closure


def mod_ideal(
    n: int, ideal: Ideal, *, cap: int = DEFAULT_POWERSET_CAP
) -> SpecSemilattice:
    """Inclusion modulo an ideal: x specialized by y iff x minus y is in the ideal.

    Raises:
        StructureError: If the ideal is over a different ground set.
    """
    _check_powerset_cap(n, cap)
    if ideal.ground_size != n:
        raise StructureError(
            f"Ideal is over a ground set of size {ideal.ground_size}, expected {n}"
        )
    join = GroundSet(n).powerset()
    idx = np.arange(join.size)
    difference = idx[:, None] & ~idx[None, :]
    return SpecSemilattice(base=join, spec=(difference & ~ideal.top) == 0)


def quotient_specialization(
    source: JoinSemilattice,
    target: JoinSemilattice | SpecSemilattice,
    phi: Homomorphism | Sequence[int],
    *,
    use_specialization: bool = False,
) -> SpecSemilattice:
    """Pull the order of the codomain back along a join homomorphism.

    a specialized by b iff phi(a) <= phi(b) in the codomain. With
    use_specialization the codomain's specialization relation is pulled back
    instead; this requires a SpecSemilattice codomain.

    Raises:
        HomomorphismError: If phi does not preserve joins (witness (x, y)).
    """
    target_base = base_of(target)
    table = phi.table if isinstance(phi, Homomorphism) else phi
    phi = Homomorphism(dom=source, cod=target_base, table=table, kind=HomKind.JOIN)
    f = phi.table

    broken = np.argwhere(f[source.join] != target_base.join[f[:, None], f[None, :]])
    if len(broken):
        x, y = (int(v) for v in broken[0])
        raise HomomorphismError(
            f"Map does not preserve the join of {source.labels[x]} and {source.labels[y]}",
            witness=(x, y),
        )

    if use_specialization:
        if not isinstance(target, SpecSemilattice):
            raise StructureError("Pulling back a specialization needs a SpecSemilattice codomain")
        relation = target.spec
    else:
        relation = target_base.leq_matrix
    return SpecSemilattice(base=source, spec=relation[f[:, None], f[None, :]])


def chain(n: int, relation: str = "leq") -> SpecSemilattice:
    """n-element chain 0 < 1 < ... < n-1 with join = max.

    Args:
        n: Number of elements, at least 1.
        relation: "leq" for the order itself, "total" for the full relation.
    """
    if n < 1:
        raise StructureError(f"Chain needs at least one element, got {n}")
    idx = np.arange(n)
    base = JoinSemilattice(join=np.maximum(idx[:, None], idx[None, :]))
    if relation == "leq":
        return SpecSemilattice.from_order(base)
    if relation == "total":
        return SpecSemilattice(base=base, spec=np.ones((n, n), dtype=bool))
    raise ValueError(f"Unknown chain relation {relation!r}, expected 'leq' or 'total'")


def direct_image(
    f: Sequence[int],
    source_n: int,
    target_n: int,
    *,
    cap: int = DEFAULT_POWERSET_CAP,
) -> Homomorphism:
    """Direct-image map A -> f[A] between powersets, as a join homomorphism.

    Raises:
        StructureError: If f is not a total map from source_n to target_n points.
    """
    _check_powerset_cap(source_n, cap)
    _check_powerset_cap(target_n, cap)
    if len(f) != source_n or any(not 0 <= int(y) < target_n for y in f):
        raise StructureError(
            f"Point map {list(f)} is not a map from {source_n} to {target_n} points"
        )
    source = GroundSet(source_n).powerset()
    target = GroundSet(target_n).powerset()
    table = [mask_of(int(f[i]) for i in members(m)) for m in range(source.size)]
    return Homomorphism(dom=source, cod=target, table=table, kind=HomKind.JOIN)


def _union_closure(family: set[int]) -> set[int]:
    closed = set(family)
    while True:
        grown = closed | {x | y for x in closed for y in closed}
        if grown == closed:
            return closed
        closed = grown


def random_spec_semilattice(
    seed: int, n: int, *, cap: int = DEFAULT_CORE_CAP
) -> SpecSemilattice:
    """Deterministic random specialization semilattice with n elements.

    The join-semilattice is a union-closed family of n bitmasks containing
    the empty mask, grown one candidate at a time from a seeded generator.
    The specialization is the completion of a random set of seed pairs.

    Raises:
        StructureError: If n < 1.
        CapExceededError: If n exceeds cap.
    """
    if n < 1:
        raise StructureError(f"Structure needs at least one element, got {n}")
    if n > cap:
        raise CapExceededError("Random structure exceeds the core cap", limit=cap, estimate=n)

    rng = random.Random(seed)
    family: set[int] = {0}
    width = 0
    while len(family) < n:
        for _ in range(8):
            candidate = rng.getrandbits(width + 1)
            grown = _union_closure(family | {candidate})
            if candidate not in family and len(grown) <= n:
                family = grown
                break
        else:
            candidate = 0
            for m in family:
                candidate |= m
            candidate |= 1 << width
            family.add(candidate)
        width = max(width, candidate.bit_length())

    masks = sorted(family, key=lambda m: (popcount(m), m))
    position = {m: i for i, m in enumerate(masks)}
    join = JoinSemilattice(
        join=[[position[x | y] for y in masks] for x in masks]
    )

    seeds = [(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randrange(n + 1))]
    structure = complete_specialization(join, seeds)

    logger.debug(
        "Random structure generated",
        extra={"seed": seed, "size": n, "seed_pairs": len(seeds)},
    )
    return structure
