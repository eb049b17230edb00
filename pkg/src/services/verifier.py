"""Brute-force oracles for the extension constructions.

Homomorphisms are enumerated by backtracking over the join-irreducible
elements of the domain: every element is the join of the irreducibles below
it, so a join homomorphism is determined by their images. Each property check
quantifies over an explicit finite universe and returns a VerificationReport
whose failures carry reproducible witnesses.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from src.config import DEFAULT_HOM_BUDGET, DEFAULT_WORKERS
from src.models.closure_set import ClosureSet
from src.models.errors import CapExceededError, PreconditionError
from src.models.extension import Extension
from src.models.homomorphism import HomKind, Homomorphism
from src.models.powerset import Ideal
from src.models.report import Failure, VerificationReport
from src.models.semilattice import SpecSemilattice, Structure, base_of
from src.services.core import closure_table
from src.services.examples_factory import (
    chain,
    mod_ideal,
    powerset_from_preorder,
    random_spec_semilattice,
)
from src.services.free_extension import (
    build_free_extension,
    enumerate_pairs,
    lift_hom,
    map_extension,
    preceq_by_witness_search,
    relation_matrix,
)
from src.services.homomorphisms import compose, identity_hom
from src.services.logger import log_verification_summary
from src.services.z_extension import check_closure_preservation, lift_hom_z
from src.utils.relation import mutual_classes, transitivity_witness


logger = logging.getLogger(__name__)

CATALOG_VERSION = 1


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    structure: SpecSemilattice


def build_catalog() -> list[CatalogEntry]:
    """The fixed list of small structures used by the acceptance suites."""
    entries = [
        CatalogEntry("singleton", chain(1)),
        CatalogEntry("chain2-leq", chain(2, "leq")),
        CatalogEntry("chain2-total", chain(2, "total")),
        CatalogEntry("powerset2-discrete", powerset_from_preorder(2, [(0, 0), (1, 1)])[0]),
        CatalogEntry(
            "powerset2-indiscrete",
            powerset_from_preorder(2, [(0, 0), (0, 1), (1, 0), (1, 1)])[0],
        ),
        CatalogEntry(
            "powerset2-sierpinski", powerset_from_preorder(2, [(0, 0), (1, 1), (1, 0)])[0]
        ),
        CatalogEntry("mod-ideal3", mod_ideal(3, Ideal.generated_by(3, [0b001]))),
    ]
    entries.extend(
        CatalogEntry(f"random-{seed}", random_spec_semilattice(seed, 1 + seed % 5))
        for seed in range(10)
    )
    return entries


def join_irreducibles(structure: Structure) -> list[int]:
    """Elements that are not the join of the elements strictly below them."""
    base = base_of(structure)
    order = base.leq_matrix
    result = []
    for x in range(base.size):
        below = [y for y in range(base.size) if order[y, x] and y != x]
        if not below or base.join_all(below) != x:
            result.append(x)
    return result


class _KindPredicate:
    """Fast membership test for one kind of map between fixed structures."""

    def __init__(self, dom: Structure, cod: Structure, kind: HomKind):
        self.kind = kind
        self.dom_join = base_of(dom).join
        self.cod_join = base_of(cod).join
        if kind != HomKind.JOIN:
            self.dom_spec = dom.spec
            self.cod_spec = cod.spec
        if kind == HomKind.K_HOM:
            dom_k = closure_table(dom)
            cod_k = closure_table(cod)
            if any(k is None for k in dom_k) or any(k is None for k in cod_k):
                raise PreconditionError("K-homs need principal structures on both sides")
            self.dom_k = np.array(dom_k)
            self.cod_k = np.array(cod_k)

    def __call__(self, f: np.ndarray) -> bool:
        if not (f[self.dom_join] == self.cod_join[f[:, None], f[None, :]]).all():
            return False
        if self.kind == HomKind.JOIN:
            return True
        image_spec = self.cod_spec[f[:, None], f[None, :]]
        if (self.dom_spec & ~image_spec).any():
            return False
        if self.kind == HomKind.K_HOM:
            return bool((f[self.dom_k] == self.cod_k[f]).all())
        if self.kind == HomKind.EMBEDDING:
            return len(set(f.tolist())) == len(f) and not (image_spec & ~self.dom_spec).any()
        return True


def enumerate_homs(
    dom: Structure,
    cod: Structure,
    kind: HomKind | str = HomKind.JOIN,
    *,
    budget: int = DEFAULT_HOM_BUDGET,
) -> list[Homomorphism]:
    """All maps dom -> cod of the given kind, in lexicographic order of irreducible images.

    Raises:
        CapExceededError: If |cod| ** (number of irreducibles) exceeds budget.
    """
    kind = HomKind(kind)
    dom_base, cod_base = base_of(dom), base_of(cod)
    irreducibles = join_irreducibles(dom)
    estimate = cod_base.size ** len(irreducibles)
    if estimate > budget:
        logger.warning(
            "Homomorphism enumeration refused by budget",
            extra={"estimate": estimate, "budget": budget},
        )
        raise CapExceededError(
            "Homomorphism enumeration exceeds the candidate budget",
            limit=budget,
            estimate=estimate,
        )

    accepts = _KindPredicate(dom, cod, kind)
    dom_order = dom_base.leq_matrix
    cod_order = cod_base.leq_matrix
    below = [
        [i for i in irreducibles if dom_order[i, x]] for x in range(dom_base.size)
    ]
    found: list[Homomorphism] = []
    images = [0] * len(irreducibles)

    def extend(depth: int) -> None:
        if depth == len(irreducibles):
            image_of = dict(zip(irreducibles, images))
            table = np.array(
                [cod_base.join_all(image_of[i] for i in below[x]) for x in range(dom_base.size)],
                dtype=np.int64,
            )
            if accepts(table):
                found.append(Homomorphism(dom=dom, cod=cod, table=table, kind=kind))
            return
        x = irreducibles[depth]
        for y in range(cod_base.size):
            consistent = all(
                (not dom_order[irreducibles[j], x] or cod_order[images[j], y])
                and (not dom_order[x, irreducibles[j]] or cod_order[y, images[j]])
                for j in range(depth)
            )
            if consistent:
                images[depth] = y
                extend(depth + 1)

    extend(0)
    logger.debug(
        "Homomorphisms enumerated",
        extra={"kind": kind.value, "irreducibles": len(irreducibles), "found": len(found)},
    )
    return found


def _require_principal(target: SpecSemilattice) -> None:
    missing = [a for a, k in enumerate(closure_table(target)) if k is None]
    if missing:
        raise PreconditionError(
            f"Target structure is not principal: {target.labels[missing[0]]} has no closure"
        )


def _check_factorizations(
    property_name: str,
    extension: Extension,
    target: SpecSemilattice,
    etas: Sequence[Homomorphism],
    lift: Callable[[Homomorphism], Homomorphism],
    *,
    budget: int,
    workers: int,
) -> VerificationReport:
    started = time.monotonic()
    k_homs = enumerate_homs(extension.result, target, HomKind.K_HOM, budget=budget)
    restricted = [g.table[extension.upsilon] for g in k_homs]

    def verify(eta: Homomorphism) -> VerificationReport:
        report = VerificationReport(property_name, instances_checked=1)
        matches = [g for g, r in zip(k_homs, restricted) if np.array_equal(r, eta.table)]
        if len(matches) != 1:
            report.fail(
                f"eta={list(eta.as_tuple())}",
                {"eta": list(eta.as_tuple()), "factorizations": len(matches)},
            )
            return report
        lifted = lift(eta)
        if lifted != matches[0]:
            report.fail(
                f"eta={list(eta.as_tuple())}",
                {"lift": list(lifted.as_tuple()), "unique": list(matches[0].as_tuple())},
            )
        return report

    report = VerificationReport(property_name)
    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        # map keeps submission order, so merged failures are deterministic
        for partial in executor.map(verify, etas):
            report.merge(partial)

    log_verification_summary(
        property_name,
        report.instances_checked,
        len(report.failures),
        round(time.monotonic() - started, 3),
    )
    return report


def check_universal_property(
    structure: SpecSemilattice,
    extension: Extension,
    target: SpecSemilattice,
    *,
    budget: int = DEFAULT_HOM_BUDGET,
    workers: int = DEFAULT_WORKERS,
) -> VerificationReport:
    """Every spec-hom S -> T has exactly one K-hom factorization through upsilon.

    The unique factorization must also equal lift_hom's output.

    Raises:
        PreconditionError: If target is not principal.
        CapExceededError: If an enumeration exceeds budget.
    """
    _require_principal(target)
    etas = enumerate_homs(structure, target, HomKind.SPEC, budget=budget)
    return _check_factorizations(
        "universal property",
        extension,
        target,
        etas,
        lambda eta: lift_hom(extension, target, eta),
        budget=budget,
        workers=workers,
    )


def check_universal_property_z(
    structure: SpecSemilattice,
    z: ClosureSet,
    extension: Extension,
    target: SpecSemilattice,
    *,
    budget: int = DEFAULT_HOM_BUDGET,
    workers: int = DEFAULT_WORKERS,
) -> VerificationReport:
    """As check_universal_property, over spec-homs preserving the closures in z."""
    _require_principal(target)
    etas = [
        eta
        for eta in enumerate_homs(structure, target, HomKind.SPEC, budget=budget)
        if check_closure_preservation(structure, z, eta).ok
    ]
    return _check_factorizations(
        "universal property (designated closures)",
        extension,
        target,
        etas,
        lambda eta: lift_hom_z(extension, target, eta, z),
        budget=budget,
        workers=workers,
    )


def check_remarks(structure: SpecSemilattice) -> VerificationReport:
    """Check the elementary closure facts on a structure, valid or not.

    For all a, b: a is specialized by a; K a exists; K K a = K a;
    K a <= K b iff a specialized by b; and "a specialized by b",
    "a <= K b", "a specialized by K b" agree.
    """
    report = VerificationReport("closure remarks")
    n = structure.size
    spec = structure.spec
    order = structure.leq_matrix
    k = closure_table(structure)

    for a in range(n):
        report.instances_checked += 1
        if not spec[a, a]:
            report.fail("reflexivity", [a])
        if k[a] is None:
            report.fail("closure exists", [a])
        elif k[k[a]] != k[a]:
            report.fail("closure idempotent", [a])

    for a in range(n):
        for b in range(n):
            report.instances_checked += 1
            if k[a] is None or k[b] is None:
                continue
            if bool(order[k[a], k[b]]) != bool(spec[a, b]):
                report.fail("closure order", [a, b])
            if not bool(spec[a, b]) == bool(order[a, k[b]]) == bool(spec[a, k[b]]):
                report.fail("equivalent conditions", [a, b])

    return report


def find_isomorphism(source: SpecSemilattice, target: SpecSemilattice) -> Homomorphism | None:
    """A bijection preserving join and specialization in both directions, or None."""
    n = source.size
    if target.size != n:
        return None

    def signature(s: SpecSemilattice, x: int) -> tuple[int, int, int, int]:
        return (
            int(s.leq_matrix[:, x].sum()),
            int(s.leq_matrix[x, :].sum()),
            int(s.spec[:, x].sum()),
            int(s.spec[x, :].sum()),
        )

    source_sig = [signature(source, x) for x in range(n)]
    target_sig = [signature(target, y) for y in range(n)]
    if sorted(source_sig) != sorted(target_sig):
        return None

    sj, tj = source.base.join, target.base.join
    image = [-1] * n
    used = [False] * n

    def consistent(x: int) -> bool:
        y = image[x]
        for w in range(x + 1):
            v = image[w]
            if source.spec[x, w] != target.spec[y, v] or source.spec[w, x] != target.spec[v, y]:
                return False
            joined = image[sj[x, w]]
            if joined != -1 and joined != tj[y, v]:
                return False
        for u in range(x):
            for w in range(u, x):
                if sj[u, w] == x and tj[image[u], image[w]] != y:
                    return False
        return True

    def assign(x: int) -> bool:
        if x == n:
            return True
        # same index first, so identical structures resolve without backtracking
        for y in sorted(range(n), key=lambda y: (y != x, y)):
            if used[y] or target_sig[y] != source_sig[x]:
                continue
            image[x], used[y] = y, True
            if consistent(x) and assign(x + 1):
                return True
            image[x], used[y] = -1, False
        return False

    if not assign(0):
        return None
    return Homomorphism(dom=source, cod=target, table=image, kind=HomKind.EMBEDDING)


def check_lemma_suite(structure: SpecSemilattice, *, workers: int = DEFAULT_WORKERS) -> VerificationReport:
    """Preorder, congruence, closure and order facts of the plain extension.

    Checks on the full (unnormalized) pair space that precedence is reflexive
    and transitive, that the pairwise join respects equivalence, that the
    closure formula gives equivalent results on equivalent pairs, and that
    class order agrees with precedence on every pair of pairs.
    """
    report = VerificationReport("extension lemmas")
    space = enumerate_pairs(structure)
    relation = relation_matrix(structure, space, workers=workers)
    size = space.size
    base = structure.base

    report.instances_checked += size * size
    for i in np.flatnonzero(~np.diag(relation)):
        report.fail("reflexive", [str(space.pair(int(i)))])
    witness = transitivity_witness(relation)
    if witness is not None:
        report.fail("transitive", [str(space.pair(i)) for i in witness])

    pair_class = np.empty(size, dtype=np.int64)
    for c, cell in enumerate(mutual_classes(relation)):
        pair_class[cell] = c

    index = np.full((structure.size, 1 << structure.size), -1, dtype=np.int64)
    index[space.heads, space.masks] = np.arange(size)
    joined = pair_class[
        index[base.join[space.heads[:, None], space.heads[None, :]], space.masks[:, None] | space.masks[None, :]]
    ]
    aggregated = np.array(
        [base.join_all([p.a, *p.bs]) for p in space.pairs()], dtype=np.int64
    )
    closed = pair_class[index[space.heads, np.left_shift(1, aggregated)]]

    for cell in mutual_classes(relation):
        first = int(cell[0])
        for other in cell[1:]:
            other = int(other)
            report.instances_checked += 1
            differs = np.flatnonzero(joined[first] != joined[other])
            if len(differs):
                report.fail(
                    "congruence",
                    [str(space.pair(first)), str(space.pair(other)), str(space.pair(int(differs[0])))],
                )
            if closed[first] != closed[other]:
                report.fail("closure well defined", [str(space.pair(first)), str(space.pair(other))])

    extension = build_free_extension(structure, self_check_limit=0, workers=workers)
    class_order = extension.result.leq_matrix[
        extension.pair_class[:, None], extension.pair_class[None, :]
    ]
    mismatch = np.argwhere(class_order != relation)
    if len(mismatch):
        i, j = (int(v) for v in mismatch[0])
        report.fail("class order", [str(space.pair(i)), str(space.pair(j))])
    return report


def check_witness_elimination(structure: SpecSemilattice) -> VerificationReport:
    """Closure-based precedence agrees with the explicit witness search on all pairs."""
    report = VerificationReport("witness elimination")
    space = enumerate_pairs(structure)
    relation = relation_matrix(structure, space, workers=1)
    pairs = space.pairs()
    for i, p in enumerate(pairs):
        for j, q in enumerate(pairs):
            report.instances_checked += 1
            if preceq_by_witness_search(structure, p, q) != bool(relation[i, j]):
                report.fail(f"{p} vs {q}", {"closure_based": bool(relation[i, j])})
    return report


def check_functoriality(
    structures: Sequence[SpecSemilattice],
    homs: Sequence[Homomorphism],
    *,
    workers: int = DEFAULT_WORKERS,
) -> VerificationReport:
    """Identity and composition laws of map_extension along a chain of maps.

    Args:
        structures: S0, S1, ..., Sm.
        homs: Spec-homs S0 -> S1, ..., S(m-1) -> Sm.
    """
    if len(homs) != len(structures) - 1:
        raise PreconditionError("Need exactly one map between consecutive structures")
    report = VerificationReport("functoriality")
    extensions = [build_free_extension(s, workers=workers) for s in structures]

    for i, extension in enumerate(extensions):
        report.instances_checked += 1
        mapped = map_extension(extension, extension, identity_hom(structures[i]))
        if mapped != identity_hom(extension.result):
            report.fail(f"identity on structure {i}", list(mapped.as_tuple()))

    steps = [map_extension(extensions[i], extensions[i + 1], homs[i]) for i in range(len(homs))]
    for i in range(len(homs)):
        for j in range(i + 1, len(homs)):
            report.instances_checked += 1
            composite = homs[i]
            mapped_composite = steps[i]
            for step in range(i + 1, j + 1):
                composite = compose(composite, homs[step])
                mapped_composite = compose(mapped_composite, steps[step])
            direct = map_extension(extensions[i], extensions[j + 1], composite)
            if direct != mapped_composite:
                report.fail(
                    f"composition {i}..{j + 1}",
                    {"direct": list(direct.as_tuple()), "composed": list(mapped_composite.as_tuple())},
                )
    return report


def search_non_k_factorizations(
    structure: SpecSemilattice,
    extension: Extension,
    target: SpecSemilattice,
    *,
    budget: int = DEFAULT_HOM_BUDGET,
) -> VerificationReport:
    """List spec-hom factorizations through upsilon that are not K-homs.

    Each finding shows a factorization the closure requirement rules out.
    Findings never count as failures.
    """
    report = VerificationReport("non-K factorizations")
    spec_homs = enumerate_homs(extension.result, target, HomKind.SPEC, budget=budget)
    is_k_hom = _KindPredicate(extension.result, target, HomKind.K_HOM)
    for eta in enumerate_homs(structure, target, HomKind.SPEC, budget=budget):
        report.instances_checked += 1
        for g in spec_homs:
            if np.array_equal(g.table[extension.upsilon], eta.table) and not is_k_hom(g.table):
                report.findings.append(
                    Failure(
                        f"eta={list(eta.as_tuple())}",
                        {"eta": list(eta.as_tuple()), "factorization": list(g.as_tuple())},
                    )
                )
    if report.findings:
        logger.info(
            "Non-K factorizations found",
            extra={"count": len(report.findings), "base_size": structure.size},
        )
    return report

