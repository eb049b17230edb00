"""Acceptance suites run over the fixed catalog of small structures.

Entries are filtered by size so every enumeration stays well inside the
default homomorphism budget.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.models.closure_set import ClosureSet
from src.models.homomorphism import HomKind
from src.services.core import (
    check_closure_identity,
    is_principal,
    to_closure_semilattice,
    to_specialization_semilattice,
    validate_specialization,
)
from src.services.examples_factory import chain, powerset_from_preorder, random_spec_semilattice
from src.services.free_extension import build_free_extension, lift_hom
from src.services.homomorphisms import check_homomorphism
from src.services.verifier import (
    build_catalog,
    check_functoriality,
    check_lemma_suite,
    check_remarks,
    check_universal_property,
    check_universal_property_z,
    check_witness_elimination,
    enumerate_homs,
    find_isomorphism,
)
from src.services.z_extension import (
    all_closures,
    build_z_extension,
    check_closure_preservation,
    lift_hom_z,
    lift_hom_z_via_quotient,
)


CATALOG = build_catalog()
CATALOG_MAX = max(e.structure.size for e in CATALOG)
TARGETS = {
    "singleton": chain(1),
    "chain2-leq": chain(2, "leq"),
    "chain2-total": chain(2, "total"),
    "sierpinski": powerset_from_preorder(2, [(0, 0), (1, 1), (1, 0)])[0],
}


def entries(max_size):
    return [pytest.param(e.structure, id=e.name) for e in CATALOG if e.structure.size <= max_size]


def principal_targets(max_size):
    return [
        pytest.param(e.structure, id=e.name)
        for e in CATALOG
        if e.structure.size <= max_size and is_principal(e.structure)
    ]


@pytest.mark.parametrize("structure", entries(4))
def test_extension_lemmas(structure):
    report = check_lemma_suite(structure, workers=2)

    assert report.ok, report.failures


@pytest.mark.parametrize("structure", entries(CATALOG_MAX))
def test_catalog_structure_facts(structure):
    """Test validity, principality, the closure facts and both round trips."""
    assert validate_specialization(structure).ok
    assert is_principal(structure)
    assert check_remarks(structure).ok

    closure = to_closure_semilattice(structure)
    assert to_specialization_semilattice(closure) == structure
    again = to_closure_semilattice(to_specialization_semilattice(closure))
    assert np.array_equal(again.closure, closure.closure)

    for r in range(3):
        for s in range(3):
            if r + s:
                report = check_closure_identity(closure, r, s)
                assert report.ok, report.violations


@pytest.mark.parametrize("structure", entries(4))
def test_witness_elimination(structure):
    """Test the closure-based precedence against the explicit witness search."""
    assert check_witness_elimination(structure).ok


@pytest.mark.parametrize("target", principal_targets(4))
@pytest.mark.parametrize("structure", entries(3))
def test_universal_property(structure, target):
    extension = build_free_extension(structure, workers=1)

    report = check_universal_property(structure, extension, target, workers=2)

    assert report.ok, report.failures
    assert report.instances_checked == len(enumerate_homs(structure, target, HomKind.SPEC))


@pytest.mark.parametrize("target", list(TARGETS.values()), ids=list(TARGETS))
@pytest.mark.parametrize("structure", entries(2))
def test_universal_property_with_designated_closures(structure, target):
    """Test every single designated closure as well as the full set."""
    choices = [all_closures(structure)] + [ClosureSet.of(structure, [v]) for v in all_closures(structure)]

    for z in choices:
        extension = build_z_extension(structure, z, workers=1)
        assert check_universal_property_z(structure, z, extension, target, workers=1).ok


@pytest.mark.parametrize("structure", entries(2))
def test_quotient_route_agrees(structure):
    """Test that lifting through the plain extension and the quotient gives the same map."""
    plain = build_free_extension(structure, workers=1)
    target = TARGETS["chain2-total"]
    for v in all_closures(structure):
        z = ClosureSet.of(structure, [v])
        extension = build_z_extension(structure, z, workers=1)
        for eta in enumerate_homs(structure, target, HomKind.SPEC):
            if not check_closure_preservation(structure, z, eta).ok:
                continue
            direct = lift_hom_z(extension, target, eta, z)
            assert lift_hom_z_via_quotient(plain, extension, target, eta, z) == direct


@pytest.mark.parametrize("structure", entries(3))
def test_normalized_build_is_isomorphic(structure):
    plain = build_free_extension(structure, workers=1)
    normalized = build_free_extension(structure, normalize=True, workers=1)

    assert normalized.size == plain.size
    assert normalized.result.labels == plain.result.labels
    assert normalized.result == plain.result
    assert find_isomorphism(plain.result, normalized.result) is not None


@pytest.mark.parametrize("structure", entries(4))
def test_functoriality(structure):
    total, point = TARGETS["chain2-total"], TARGETS["singleton"]
    to_point = enumerate_homs(total, point, HomKind.SPEC)[0]

    for eta in enumerate_homs(structure, total, HomKind.SPEC):
        report = check_functoriality([structure, total, point], [eta, to_point], workers=1)
        assert report.ok, report.failures


@pytest.mark.parametrize("structure", entries(4))
def test_all_closures_extension_is_the_structure(structure):
    """Test that designating every closure makes the embedding onto."""
    extension = build_z_extension(structure, all_closures(structure), workers=1)

    assert extension.size == structure.size
    assert sorted(int(c) for c in extension.upsilon) == list(range(structure.size))
    assert check_homomorphism(
        structure, extension.result, extension.upsilon, HomKind.EMBEDDING
    ).ok
    assert find_isomorphism(structure, extension.result) is not None


@pytest.mark.parametrize("structure", entries(4))
def test_no_designated_closures_is_the_plain_extension(structure):
    plain = build_free_extension(structure, workers=1)
    extension = build_z_extension(structure, ClosureSet.of(structure, []), workers=1)

    assert extension.result == plain.result
    assert extension.result.labels == plain.result.labels
    assert np.array_equal(extension.upsilon, plain.upsilon)


@pytest.mark.parametrize(
    "name,classes",
    [("singleton", 2), ("chain2-leq", 5), ("chain2-total", 3)],
)
def test_known_extension_sizes(name, classes):
    (structure,) = [e.structure for e in CATALOG if e.name == name]

    assert build_free_extension(structure, workers=1).size == classes


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(min_value=0, max_value=500), n=st.integers(min_value=1, max_value=3))
def test_random_extensions(seed, n):
    """Test principality, the embedding and lift restriction on random structures."""
    structure = random_spec_semilattice(seed, n)
    extension = build_free_extension(structure, workers=1)
    target = TARGETS["chain2-total"]

    assert validate_specialization(extension.result).ok
    assert is_principal(extension.result)
    assert check_homomorphism(structure, extension.result, extension.upsilon, HomKind.EMBEDDING).ok
    for eta in enumerate_homs(structure, target, HomKind.SPEC):
        lifted = lift_hom(extension, target, eta)
        assert np.array_equal(lifted.table[extension.upsilon], eta.table)
