"""Unit tests for the extension preserving designated closures."""

import pytest

from src.models.closure_set import ClosureSet
from src.models.errors import HomomorphismError, PreconditionError, StructureError
from src.models.pair import Pair
from src.services.free_extension import build_free_extension, lift_hom, preceq, upsilon_hom
from src.services.z_extension import (
    all_closures,
    build_z_extension,
    check_closure_preservation,
    equivalent_z,
    lift_hom_z,
    lift_hom_z_via_quotient,
    preceq_z,
    quotient_map,
)


@pytest.fixture
def z_top(two_chain):
    """Z = {1} on the 2-chain."""
    return ClosureSet.of(two_chain, [1])


@pytest.fixture
def z_top_extension(two_chain, z_top):
    """The 2-chain extended preserving K 1 = 1: a 3-chain."""
    return build_z_extension(two_chain, z_top, workers=1)


class TestClosureSet:
    """Test validation of designated closures."""

    def test_all_closures(self, two_chain, two_chain_total):
        assert all_closures(two_chain).sorted() == [0, 1]
        assert all_closures(two_chain_total).sorted() == [1]

    def test_non_closure_rejected(self, sierpinski):
        """Test that {p} is refused because its closure is {p,q}."""
        with pytest.raises(StructureError, match=r"Element \{p\} is not a closure") as exc:
            ClosureSet.of(sierpinski, [1])
        assert exc.value.witness == (1,)

    def test_container_protocol(self, sierpinski):
        z = ClosureSet.of(sierpinski, [3, 0, 2])

        assert list(z) == [0, 2, 3]
        assert 2 in z
        assert len(z) == 3


class TestPrecedenceZ:
    """Test the relation relative to Z."""

    def test_designated_closure_absorbs(self, two_chain, z_top):
        """Test that (0,{1}) drops below (1,∅) once K 1 = 1 is designated."""
        assert not preceq(two_chain, Pair.of(0, [1]), Pair.of(1))
        assert preceq_z(two_chain, z_top, Pair.of(0, [1]), Pair.of(1))
        assert equivalent_z(two_chain, z_top, Pair.of(0, [1]), Pair.of(1))

    def test_empty_z_is_plain(self, two_chain):
        z = ClosureSet.of(two_chain, [])
        pairs = [Pair.of(0), Pair.of(0, [0]), Pair.of(1), Pair.of(0, [1]), Pair.of(1, [0])]

        for p in pairs:
            for q in pairs:
                assert preceq_z(two_chain, z, p, q) == preceq(two_chain, p, q)

    def test_foreign_closure_set(self, two_chain, two_chain_total):
        z = ClosureSet.of(two_chain_total, [1])

        with pytest.raises(PreconditionError, match="different structure"):
            preceq_z(two_chain, z, Pair.of(0), Pair.of(0))


class TestBuildZExtension:
    """Test the Z-extension on the 2-chain."""

    def test_top_designated_gives_three_chain(self, z_top_extension):
        ext = z_top_extension

        assert ext.result.labels == ("[0,∅]", "[0,{0}]", "[0,{0,1}]")
        assert list(ext.upsilon) == [0, 2]
        assert list(ext.closure) == [1, 1, 2]
        assert ext.z == frozenset({1})

    def test_all_closures_collapse_to_base(self, two_chain):
        """Test that preserving every closure leaves a copy of the base."""
        ext = build_z_extension(two_chain, all_closures(two_chain), workers=1)

        assert ext.size == 2
        assert list(ext.upsilon) == [0, 1]
        assert list(ext.closure) == [0, 1]

    def test_empty_z_matches_plain(self, two_chain, two_chain_extension):
        ext = build_z_extension(two_chain, ClosureSet.of(two_chain, []), workers=1)

        assert ext.result == two_chain_extension.result

    def test_plain_embedding_does_not_preserve_closures(self, two_chain, two_chain_extension):
        """Test that the plain embedding moves K 0 = 0 to a strictly larger closure."""
        report = check_closure_preservation(
            two_chain, all_closures(two_chain), upsilon_hom(two_chain_extension)
        )

        assert report.first("closure").witness == (0,)
        assert len(report.violations) == 2


class TestLiftZ:
    """Test lifting through the Z-extension."""

    def test_lift(self, two_chain, z_top, z_top_extension):
        lifted = lift_hom_z(z_top_extension, two_chain, [0, 1], z_top)

        assert lifted.as_tuple() == (0, 0, 1)

    def test_quotient_route_agrees(self, two_chain, z_top, z_top_extension, two_chain_extension):
        quotient = quotient_map(two_chain_extension, z_top_extension)
        via_quotient = lift_hom_z_via_quotient(
            two_chain_extension, z_top_extension, two_chain, [0, 1], z_top
        )

        assert quotient.as_tuple() == (0, 1, 2, 2, 2)
        assert via_quotient == lift_hom_z(z_top_extension, two_chain, [0, 1], z_top)

    def test_non_preserving_map_rejected(self, two_chain, two_chain_total):
        """Test that K 0 = 0 cannot go to 0 when K 0 = 1 in the codomain."""
        z = all_closures(two_chain)
        ext = build_z_extension(two_chain, z, workers=1)

        with pytest.raises(HomomorphismError) as exc:
            lift_hom_z(ext, two_chain_total, [0, 1], z)
        assert exc.value.witness == (0,)

    def test_mismatched_z(self, two_chain, z_top_extension):
        with pytest.raises(PreconditionError, match="was built for Z=\\[1\\]"):
            lift_hom_z(z_top_extension, two_chain, [0, 1], all_closures(two_chain))

    def test_plain_lift_refuses_z_extension(self, two_chain, z_top_extension):
        with pytest.raises(PreconditionError, match="lift_hom_z"):
            lift_hom(z_top_extension, two_chain, [0, 1])

    def test_quotient_needs_plain_extension(self, z_top_extension):
        with pytest.raises(PreconditionError, match="plain extension"):
            quotient_map(z_top_extension, z_top_extension)

    def test_quotient_of_unrelated_extensions(self, singleton, z_top_extension):
        with pytest.raises(PreconditionError, match="different structures"):
            quotient_map(build_free_extension(singleton, workers=1), z_top_extension)
