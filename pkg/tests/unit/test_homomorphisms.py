"""Unit tests for homomorphism checks and composition."""

import pytest

from src.models.errors import HomomorphismError
from src.models.homomorphism import HomKind, Homomorphism
from src.services.examples_factory import chain
from src.services.homomorphisms import (
    check_homomorphism,
    compose,
    identity_hom,
    require_homomorphism,
)


class TestHomomorphismModel:
    """Test table validation on construction."""

    def test_wrong_length(self, two_chain):
        with pytest.raises(HomomorphismError, match="must have length 2"):
            Homomorphism(dom=two_chain, cod=two_chain, table=[0])

    def test_image_outside_codomain(self, two_chain, singleton):
        with pytest.raises(HomomorphismError) as exc:
            Homomorphism(dom=two_chain, cod=singleton, table=[0, 1])
        assert exc.value.witness == (1,)

    def test_equality_by_table(self, two_chain, two_chain_total):
        """Test that maps compare by their tables only."""
        f = Homomorphism(dom=two_chain, cod=two_chain, table=[0, 1])
        g = Homomorphism(dom=two_chain, cod=two_chain_total, table=[0, 1], kind=HomKind.SPEC)

        assert f == g
        assert hash(f) == hash(g)
        assert f(1) == 1


class TestCheckHomomorphism:
    """Test each kind of map."""

    def test_identity_is_every_kind(self, sierpinski):
        for kind in HomKind:
            assert check_homomorphism(sierpinski, sierpinski, range(4), kind).ok

    def test_constant_map_is_not_injective(self, two_chain):
        """Test that the constant map to 1 is a K-hom but not an embedding."""
        assert check_homomorphism(two_chain, two_chain, [1, 1], HomKind.K_HOM).ok

        report = check_homomorphism(two_chain, two_chain, [1, 1], HomKind.EMBEDDING)
        assert report.first("injective").witness == (0, 1)

    def test_spec_violation(self, two_chain_total, two_chain):
        """Test that 1 -> 0 is lost when the total relation maps to the order."""
        report = check_homomorphism(two_chain_total, two_chain, [0, 1], HomKind.SPEC)

        assert report.axioms_violated() == ["spec"]
        assert report.first("spec").witness == (1, 0)

    def test_reflect_violation(self, two_chain, two_chain_total):
        """Test that the identity into the total relation does not reflect it."""
        report = check_homomorphism(two_chain, two_chain_total, [0, 1], HomKind.EMBEDDING)

        assert report.axioms_violated() == ["reflect"]

    def test_closure_violation(self, two_chain, two_chain_total):
        """Test that K 0 = 0 in the order but K 0 = 1 in the total relation."""
        report = check_homomorphism(two_chain, two_chain_total, [0, 1], HomKind.K_HOM)

        assert report.first("closure").witness == (0,)

    def test_join_violation(self):
        report = check_homomorphism(chain(3), chain(3), [2, 1, 0], HomKind.JOIN)

        assert report.first("join").witness == (0, 1)

    def test_spec_check_needs_spec_structures(self, two_chain):
        with pytest.raises(HomomorphismError, match="needs specialization semilattices"):
            check_homomorphism(two_chain.base, two_chain.base, [0, 1], HomKind.SPEC)

    def test_require_raises_with_witness(self, two_chain_total, two_chain):
        with pytest.raises(HomomorphismError, match="not a spec-hom") as exc:
            require_homomorphism(two_chain_total, two_chain, [0, 1], "spec-hom")
        assert exc.value.witness == (1, 0)


class TestCompose:
    """Test diagrammatic composition."""

    def test_applies_first_map_first(self):
        three = chain(3)
        f = Homomorphism(dom=chain(2), cod=three, table=[0, 2])
        g = Homomorphism(dom=three, cod=three, table=[1, 1, 2])

        assert compose(f, g).as_tuple() == (1, 2)

    def test_kind_is_weakest_common(self, two_chain):
        f = identity_hom(two_chain)
        g = Homomorphism(dom=two_chain, cod=two_chain, table=[0, 1], kind=HomKind.K_HOM)

        assert compose(f, f).kind == HomKind.EMBEDDING
        assert compose(f, g).kind == HomKind.SPEC
        assert compose(g, Homomorphism(dom=two_chain, cod=two_chain, table=[0, 1])).kind == HomKind.JOIN

    def test_mismatched_maps(self, two_chain, singleton):
        f = Homomorphism(dom=two_chain, cod=singleton, table=[0, 0])

        with pytest.raises(HomomorphismError, match="Cannot compose"):
            compose(f, f)
