"""Checking, composing and constructing structure-preserving maps.

Every kind strengthens join preservation:

    join-hom   f(x v y) = f(x) v f(y)
    spec-hom   join-hom, and x specialized by y implies f(x) specialized by f(y)
    K-hom      spec-hom, and f(K x) = K f(x)
    embedding  injective spec-hom that also reflects specialization

Composition is diagrammatic: compose(f, g) applies f first, then g.
"""

from typing import Sequence

import numpy as np

from src.models.errors import HomomorphismError
from src.models.homomorphism import HomKind, Homomorphism
from src.models.report import AxiomReport
from src.models.semilattice import SpecSemilattice, Structure, base_of
from src.services.core import closure_table


CHECKS = {
    HomKind.JOIN: ("join",),
    HomKind.SPEC: ("join", "spec"),
    HomKind.K_HOM: ("join", "spec", "closure"),
    HomKind.EMBEDDING: ("join", "spec", "injective", "reflect"),
}


def check_homomorphism(
    dom: Structure,
    cod: Structure,
    table: Sequence[int] | np.ndarray,
    kind: HomKind | str = HomKind.JOIN,
) -> AxiomReport:
    """Report every way table fails to be a homomorphism of the given kind.

    Args:
        dom: Domain. Must be a SpecSemilattice for every kind except join-hom.
        cod: Codomain, same requirement as dom.
        table: Image of each domain element.
        kind: Kind to check.

    Returns:
        AxiomReport: Violations tagged "join" (x, y), "spec" (x, y),
            "closure" (x,), "injective" (x, y) and "reflect" (x, y).

    Raises:
        HomomorphismError: If the table has the wrong length or leaves the
            codomain, or a specialization check is asked of a bare
            join-semilattice.
    """
    kind = HomKind(kind)
    f = Homomorphism(dom=dom, cod=cod, table=table, kind=kind).table
    checks = CHECKS[kind]
    if "spec" in checks and not (
        isinstance(dom, SpecSemilattice) and isinstance(cod, SpecSemilattice)
    ):
        raise HomomorphismError(f"A {kind.value} needs specialization semilattices on both sides")

    report = AxiomReport(subject=kind.value)
    dom_base, cod_base = base_of(dom), base_of(cod)

    broken = f[dom_base.join] != cod_base.join[f[:, None], f[None, :]]
    for x, y in np.argwhere(broken):
        if x <= y:
            report.add("join", x, y)

    if "spec" in checks:
        image_spec = cod.spec[f[:, None], f[None, :]]
        for x, y in np.argwhere(dom.spec & ~image_spec):
            report.add("spec", x, y)

        if "closure" in checks:
            dom_k = closure_table(dom)
            cod_k = closure_table(cod)
            for x in range(dom.size):
                if dom_k[x] is None or cod_k[f[x]] is None or f[dom_k[x]] != cod_k[f[x]]:
                    report.add("closure", x)

        if "injective" in checks:
            same = f[:, None] == f[None, :]
            for x, y in np.argwhere(same):
                if x < y:
                    report.add("injective", x, y)
            for x, y in np.argwhere(image_spec & ~dom.spec):
                report.add("reflect", x, y)

    return report


def require_homomorphism(
    dom: Structure,
    cod: Structure,
    table: Sequence[int] | np.ndarray,
    kind: HomKind | str = HomKind.JOIN,
) -> Homomorphism:
    """Build a Homomorphism, raising HomomorphismError on the first violation."""
    kind = HomKind(kind)
    report = check_homomorphism(dom, cod, table, kind)
    if not report.ok:
        violation = report.violations[0]
        raise HomomorphismError(
            f"Map is not a {kind.value}: fails {violation.axiom} at {violation.witness}",
            witness=violation.witness,
        )
    return Homomorphism(dom=dom, cod=cod, table=table, kind=kind)


def _composite_kind(first: HomKind, second: HomKind) -> HomKind:
    if first == second:
        return first
    if HomKind.JOIN in (first, second):
        return HomKind.JOIN
    return HomKind.SPEC


def compose(f: Homomorphism, g: Homomorphism) -> Homomorphism:
    """Diagrammatic composite: x maps to g(f(x)).

    The composite is tagged with the strongest kind both maps guarantee.

    Raises:
        HomomorphismError: If the codomain of f is not the domain of g.
    """
    if f.cod.size != g.dom.size:
        raise HomomorphismError(
            f"Cannot compose: first map lands in {f.cod.size} elements, "
            f"second map starts from {g.dom.size}"
        )
    return Homomorphism(
        dom=f.dom, cod=g.cod, table=g.table[f.table], kind=_composite_kind(f.kind, g.kind)
    )


def identity_hom(structure: Structure) -> Homomorphism:
    return Homomorphism(
        dom=structure, cod=structure, table=np.arange(structure.size), kind=HomKind.EMBEDDING
    )
