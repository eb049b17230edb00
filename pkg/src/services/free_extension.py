"""The free principal extension of a finite specialization semilattice.

Pairs (a, B) stand for "a v K b1 v ... v K bh". For pairs p = (a, B) and
q = (c, D), p precedes q iff

    bound:  a <= c v K d1 v ... v K dk      (a <= c when D is empty)
    cover:  every b in B is specialized by some d in D

where K d is the closure of d in S. Classes of mutually preceding pairs form
the extension, with

    [a, B] v [c, D] = [a v c, B u D]
    K [a, B]        = [a, {a v b1 v ... v bh}]
    x specialized by y  iff  x <= K y

and S embeds by a -> [a, {}].

The existential form of the bound, "a <= c v d1* v ... v dk* for some dj*
specialized by dj", is equivalent because each dj has a largest element
specialized by it, namely K dj. preceq_by_witness_search keeps the
existential form for cross-checking.
"""

import itertools
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable

import numpy as np

from src.config import (
    DEFAULT_EXTENSION_CAP,
    DEFAULT_SELF_CHECK_LIMIT,
    DEFAULT_WORKERS,
)
from src.models.errors import (
    CapExceededError,
    InvariantViolationError,
    PreconditionError,
)
from src.models.extension import Extension
from src.models.homomorphism import HomKind, Homomorphism
from src.models.pair import Pair, PairSpace
from src.models.semilattice import JoinSemilattice, SpecSemilattice
from src.services.core import (
    closure_table,
    require_valid_specialization,
    validate_closure,
    validate_join_table,
)
from src.services.homomorphisms import check_homomorphism, require_homomorphism
from src.services.logger import log_extension_built
from src.utils.bitset import mask_of, members
from src.utils.relation import is_reflexive, is_transitive, mutual_classes


logger = logging.getLogger(__name__)

ROW_BLOCK = 512


def _closures(structure: SpecSemilattice) -> list[int]:
    table = closure_table(structure)
    missing = [a for a, k in enumerate(table) if k is None]
    if missing:
        raise PreconditionError(
            f"Element {structure.labels[missing[0]]} has no closure"
        )
    return list(table)


def preceq(structure: SpecSemilattice, p: Pair, q: Pair) -> bool:
    """Decide p precedes q by the bound and cover clauses, with closures in the bound.

    Raises:
        StructureError: If a pair mentions an element outside the carrier.
    """
    n = structure.size
    p, q = p.check(n), q.check(n)
    k = _closures(structure)
    base = structure.base

    bound = base.join_all([q.a, *(k[d] for d in q.bs)])
    if not base.leq(p.a, bound):
        return False
    return all(any(structure.spec[b, d] for d in q.bs) for b in p.bs)


def equivalent(structure: SpecSemilattice, p: Pair, q: Pair) -> bool:
    return preceq(structure, p, q) and preceq(structure, q, p)


def preceq_by_witness_search(structure: SpecSemilattice, p: Pair, q: Pair) -> bool:
    """Precedence with the bound decided by searching every choice of dj* specialized by dj."""
    n = structure.size
    p, q = p.check(n), q.check(n)
    base = structure.base
    ds = sorted(q.bs)
    below = [np.flatnonzero(structure.spec[:, d]) for d in ds]

    bounded = any(
        base.leq(p.a, base.join_all([q.a, *(int(x) for x in choice)]))
        for choice in itertools.product(*below)
    )
    if not bounded:
        return False
    return all(any(structure.spec[b, d] for d in ds) for b in p.bs)


def normalize_pair(structure: SpecSemilattice, p: Pair) -> Pair:
    """Equivalent pair with head a v b1 v ... v bh and redundant b's dropped."""
    return p.check(structure.size).normalized(structure)


def enumerate_pairs(structure: SpecSemilattice, normalize: bool = False) -> PairSpace:
    """All pairs (a, B) over the carrier, sorted by head then sorted B.

    With normalize, only pairs equal to their own normal form are listed;
    every pair is equivalent to exactly one of those.
    """
    n = structure.size
    subsets = sorted(range(1 << n), key=members)
    heads, masks = [], []
    for a in range(n):
        for m in subsets:
            if normalize:
                p = Pair.of(a, members(m))
                if p.normalized(structure) != p:
                    continue
            heads.append(a)
            masks.append(m)
    return PairSpace(base=structure, heads=heads, masks=masks, normalized=normalize)


def _subset_joins(base: JoinSemilattice, values: list[int]) -> np.ndarray:
    """joins[m] = join of values[b] over b in m; joins[0] = -1."""
    n = len(values)
    joins = np.full(1 << n, -1, dtype=np.int64)
    for m in range(1, 1 << n):
        low = (m & -m).bit_length() - 1
        rest = m & (m - 1)
        joins[m] = values[low] if rest == 0 else base.join_of(int(joins[rest]), values[low])
    return joins


def _subset_unions(values: list[int]) -> np.ndarray:
    """unions[m] = bitwise or of values[b] over b in m."""
    n = len(values)
    unions = np.zeros(1 << n, dtype=np.int64)
    for m in range(1, 1 << n):
        low = (m & -m).bit_length() - 1
        unions[m] = unions[m & (m - 1)] | values[low]
    return unions


class _Kernel:
    """Vectorized precedence over a pair space, optionally relative to Z.

    With Z, an element b of the left pair may also be absorbed by a designated
    closure z >= b whose pair (z, {}) precedes the right pair.
    """

    def __init__(self, structure: SpecSemilattice, space: PairSpace, z: Iterable[int] = ()):
        base = structure.base
        n = structure.size
        k = _closures(structure)
        order = base.leq_matrix

        kjoin = _subset_joins(base, k)
        covered = _subset_unions([mask_of(np.flatnonzero(structure.spec[:, d])) for d in range(n)])

        # zcover[v]: elements below some z in Z with z <= v
        zcover = np.zeros(n, dtype=np.int64)
        for zi in z:
            down = mask_of(np.flatnonzero(order[:, zi]))
            zcover[order[zi, :]] |= down

        heads = space.heads
        masks = space.masks
        safe = np.where(masks == 0, 1, masks)
        self.rhs = np.where(masks == 0, heads, base.join[heads, kjoin[safe]])
        self.allowed = covered[masks] | zcover[self.rhs]
        self.heads = heads
        self.masks = masks
        self.order = order

    def rows(self, start: int, stop: int) -> np.ndarray:
        bounded = self.order[self.heads[start:stop, None], self.rhs[None, :]]
        covered = (self.masks[start:stop, None] & ~self.allowed[None, :]) == 0
        return bounded & covered

    def matrix(self, workers: int) -> np.ndarray:
        size = len(self.heads)
        result = np.zeros((size, size), dtype=bool)
        blocks = [(s, min(s + ROW_BLOCK, size)) for s in range(0, size, ROW_BLOCK)]

        def fill(block: tuple[int, int]) -> None:
            start, stop = block
            result[start:stop] = self.rows(start, stop)

        if workers <= 1 or len(blocks) == 1:
            for block in blocks:
                fill(block)
        else:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                # disjoint row slices, so completion order does not matter
                list(executor.map(fill, blocks))
        return result


def relation_matrix(
    structure: SpecSemilattice,
    space: PairSpace,
    z: Iterable[int] = (),
    *,
    workers: int = DEFAULT_WORKERS,
) -> np.ndarray:
    """Full precedence matrix of a pair space (relative to Z when given)."""
    return _Kernel(structure, space, z).matrix(workers)


def _check_cap(structure: SpecSemilattice, cap: int) -> None:
    n = structure.size
    if n > cap:
        logger.warning(
            "Extension refused by size cap",
            extra={"size": n, "cap": cap},
        )
        raise CapExceededError(
            f"Extension of a {n}-element structure exceeds the extension cap",
            limit=cap,
            estimate=n * (1 << n),
        )


def build_extension(
    structure: SpecSemilattice,
    z: Iterable[int] = (),
    *,
    cap: int = DEFAULT_EXTENSION_CAP,
    normalize: bool = False,
    workers: int = DEFAULT_WORKERS,
    self_check_limit: int = DEFAULT_SELF_CHECK_LIMIT,
) -> Extension:
    """Quotient the pair space of structure by mutual precedence relative to z.

    Shared by the plain extension (z empty) and the Z-extension. Callers are
    responsible for z consisting of closures.

    Raises:
        StructureError: If structure fails the specialization axioms.
        CapExceededError: If |S| exceeds cap.
        InvariantViolationError: If a self-check fails (only run when the pair
            space has at most self_check_limit pairs).
    """
    started = time.monotonic()
    require_valid_specialization(structure)
    _check_cap(structure, cap)

    z = frozenset(int(v) for v in z)
    base = structure.base
    n = structure.size
    space = enumerate_pairs(structure, normalize=normalize)
    relation = relation_matrix(structure, space, sorted(z), workers=workers)
    logger.debug(
        "Pair relation evaluated",
        extra={"pairs": space.size, "workers": workers, "z": sorted(z)},
    )

    cells = mutual_classes(relation)
    pair_class = np.empty(space.size, dtype=np.int64)
    for c, cell in enumerate(cells):
        pair_class[cell] = c
    lookup = _class_lookup(structure, space, pair_class)

    # renumber by least raw pair, so normalized builds name classes like plain ones
    least = _least_raw_pairs(lookup)
    rank = np.empty(len(cells), dtype=np.int64)
    rank[list(least)] = np.arange(len(cells))
    pair_class = rank[pair_class]
    lookup = rank[lookup]
    reps = np.array([cells[c][0] for c in least], dtype=np.int64)
    heads = np.array([a for a, _ in least.values()], dtype=np.int64)
    masks = np.array([m for _, m in least.values()], dtype=np.int64)
    representatives = tuple(Pair.of(a, members(m)) for a, m in least.values())

    join = lookup[base.join[heads[:, None], heads[None, :]], masks[:, None] | masks[None, :]]

    bjoin = _subset_joins(base, list(range(n)))
    aggregated = np.array(
        [a if m == 0 else base.join_of(int(a), int(bjoin[m])) for a, m in zip(heads, masks)],
        dtype=np.int64,
    )
    closure = lookup[heads, np.left_shift(1, aggregated)]
    upsilon = lookup[np.arange(n), 0]

    class_order = relation[reps[:, None], reps[None, :]]
    labels = tuple(p.label(structure.labels) for p in representatives)
    result = SpecSemilattice(
        base=JoinSemilattice(join=join, labels=labels),
        spec=class_order[:, closure],
    )
    extension = Extension(
        base=structure,
        space=space,
        result=result,
        closure=closure,
        upsilon=upsilon,
        pair_class=pair_class,
        representatives=representatives,
        z=z,
    )

    if space.size <= self_check_limit:
        _self_check(extension, relation, lookup, class_order)

    log_extension_built(
        base_size=n,
        pairs=space.size,
        classes=extension.size,
        z=sorted(z),
        normalized=normalize,
        duration_ms=int((time.monotonic() - started) * 1000),
    )
    return extension


def _class_lookup(
    structure: SpecSemilattice, space: PairSpace, pair_class: np.ndarray
) -> np.ndarray:
    """lookup[a, m] = class of the pair (a, members(m)), for every raw pair."""
    n = structure.size
    lookup = np.empty((n, 1 << n), dtype=np.int64)
    for a in range(n):
        for m in range(1 << n):
            p = Pair.of(a, members(m))
            if space.normalized:
                p = p.normalized(structure)
            lookup[a, m] = pair_class[space.index_of(p)]
    return lookup


def _least_raw_pairs(lookup: np.ndarray) -> dict[int, tuple[int, int]]:
    """Map each class to its least raw pair (head, mask), in order of those pairs.

    Raw pairs are scanned in the enumeration order of the full pair space, so
    the result does not depend on whether the space was normalized.
    """
    n = lookup.shape[0]
    least: dict[int, tuple[int, int]] = {}
    for a in range(n):
        for m in sorted(range(1 << n), key=members):
            least.setdefault(int(lookup[a, m]), (a, m))
    return least


def _self_check(
    extension: Extension,
    relation: np.ndarray,
    lookup: np.ndarray,
    class_order: np.ndarray,
) -> None:
    """Assert the preorder, congruence, closure and principality facts."""
    space = extension.space
    base = extension.base.base
    result = extension.result

    if not (is_reflexive(relation) and is_transitive(relation)):
        raise InvariantViolationError("Pair relation is not a preorder")

    if not validate_join_table(result.base).ok:
        raise InvariantViolationError("Class join table is not a semilattice")
    if not np.array_equal(result.leq_matrix, class_order):
        raise InvariantViolationError("Class join order disagrees with pair precedence")

    heads, masks = space.heads, space.masks
    joined = lookup[base.join[heads[:, None], heads[None, :]], masks[:, None] | masks[None, :]]
    expected = result.base.join[extension.pair_class[:, None], extension.pair_class[None, :]]
    if not np.array_equal(joined, expected):
        i, j = (int(v) for v in np.argwhere(joined != expected)[0])
        raise InvariantViolationError(
            f"Join is not compatible with equivalence at pairs {space.pair(i)}, {space.pair(j)}"
        )

    for i in range(space.size):
        p = space.pair(i)
        aggregated = base.join_all([p.a, *p.bs])
        if lookup[p.a, 1 << aggregated] != extension.closure[extension.pair_class[i]]:
            raise InvariantViolationError(f"Closure is not well defined at pair {p}")

    if not validate_closure(extension.closure_semilattice()).ok:
        raise InvariantViolationError("Extension closure is not a closure operation")
    if list(closure_table(result)) != [int(c) for c in extension.closure]:
        raise InvariantViolationError("Extension closure does not match its specialization")


def build_free_extension(
    structure: SpecSemilattice,
    *,
    cap: int = DEFAULT_EXTENSION_CAP,
    normalize: bool = False,
    workers: int = DEFAULT_WORKERS,
    self_check_limit: int = DEFAULT_SELF_CHECK_LIMIT,
) -> Extension:
    """Build the free principal extension of structure.

    Args:
        structure: Valid specialization semilattice.
        cap: Maximum |S|; the pair space has |S| * 2^|S| members.
        normalize: Enumerate only normal pairs before quotienting.
        workers: Threads evaluating the pair relation.
        self_check_limit: Largest pair space on which the construction's
            internal facts are asserted.

    Returns:
        Extension: Principal; its upsilon is an embedding.

    Raises:
        CapExceededError: If |S| exceeds cap.

    Examples:
        >>> from src.services.examples_factory import chain
        >>> build_free_extension(chain(2)).size
        5
    """
    return build_extension(
        structure,
        (),
        cap=cap,
        normalize=normalize,
        workers=workers,
        self_check_limit=self_check_limit,
    )


def embed(extension: Extension, a: int) -> int:
    """Class of (a, {})."""
    a = extension.base.base.check_element(a)
    return int(extension.upsilon[a])


def upsilon_hom(extension: Extension) -> Homomorphism:
    """The embedding of the base into the extension as a Homomorphism."""
    return Homomorphism(
        dom=extension.base,
        cod=extension.result,
        table=extension.upsilon,
        kind=HomKind.EMBEDDING,
    )


def lift_table(extension: Extension, target: SpecSemilattice, eta: np.ndarray) -> np.ndarray:
    """Evaluate eta(a) v K eta(b1) v ... v K eta(bh) on every class.

    Raises:
        InvariantViolationError: If two pairs of one class give different values.
    """
    kt = _closures(target)
    space = extension.space

    def value(p: Pair) -> int:
        return target.base.join_all([int(eta[p.a]), *(kt[int(eta[b])] for b in p.bs)])

    table = np.array([value(p) for p in extension.representatives], dtype=np.int64)
    for i in range(space.size):
        c = int(extension.pair_class[i])
        if value(space.pair(i)) != table[c]:
            raise InvariantViolationError(
                f"Lift is not well defined on class {extension.label(c)}: "
                f"pair {space.pair(i)} disagrees with the representative"
            )
    return table


def lift_checked(
    extension: Extension, target: SpecSemilattice, eta: Homomorphism
) -> Homomorphism:
    """Lift an already validated eta and assert the result is a K-hom extending it."""
    lifted = lift_table(extension, target, eta.table)
    report = check_homomorphism(extension.result, target, lifted, HomKind.K_HOM)
    if not report.ok:
        violation = report.violations[0]
        raise InvariantViolationError(
            f"Lift is not a K-hom: {violation.axiom} at {violation.witness}"
        )
    if not np.array_equal(lifted[extension.upsilon], eta.table):
        raise InvariantViolationError("Lift does not extend the given map")
    return Homomorphism(dom=extension.result, cod=target, table=lifted, kind=HomKind.K_HOM)


def lift_hom(
    extension: Extension, target: SpecSemilattice, eta: Homomorphism | Iterable[int]
) -> Homomorphism:
    """The unique K-hom g from the extension into target with upsilon;g = eta.

    Args:
        extension: Free extension of S.
        target: Principal specialization semilattice.
        eta: Spec-hom S -> target (a Homomorphism or an image table).

    Returns:
        Homomorphism: K-hom from extension.result into target.

    Raises:
        PreconditionError: If target is not principal, or the extension was
            built relative to designated closures (use lift_hom_z).
        HomomorphismError: If eta is not a spec-hom (with witness).
    """
    if extension.z:
        raise PreconditionError("Extension preserves designated closures; lift it with lift_hom_z")
    _closures(target)
    table = eta.table if isinstance(eta, Homomorphism) else list(eta)
    eta = require_homomorphism(extension.base, target, table, HomKind.SPEC)
    return lift_checked(extension, target, eta)


def map_extension(
    source: Extension, target: Extension, psi: Homomorphism | Iterable[int]
) -> Homomorphism:
    """Extension of a spec-hom psi: S -> U to the free extensions.

    The result is the lift of psi followed by the embedding of U, so the
    square upsilon_S;result = psi;upsilon_U commutes.
    """
    table = psi.table if isinstance(psi, Homomorphism) else list(psi)
    psi = require_homomorphism(source.base, target.base, table, HomKind.SPEC)
    eta = target.upsilon[psi.table]
    return lift_hom(source, target.result, eta)
