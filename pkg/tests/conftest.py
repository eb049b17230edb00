"""pytest fixtures for testing."""

from pathlib import Path

import pytest

from src.services.examples_factory import chain, powerset_from_preorder
from src.services.free_extension import build_free_extension


FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    """Directory holding structure files and expected outputs."""
    return FIXTURES


@pytest.fixture
def singleton():
    """One-element structure; its only relation is 0 specialized by 0."""
    return chain(1)


@pytest.fixture
def two_chain():
    """0 < 1 with the order as specialization (every element is its own closure)."""
    return chain(2, "leq")


@pytest.fixture
def two_chain_total():
    """0 < 1 with everything specialized by everything (K is constantly 1)."""
    return chain(2, "total")


@pytest.fixture
def sierpinski():
    """Powerset of {p, q} with q below p, so K{p} = {p,q} and K{q} = {q}."""
    structure, _ = powerset_from_preorder(2, [(0, 0), (1, 1), (1, 0)])
    return structure


@pytest.fixture
def two_chain_extension(two_chain):
    """Free extension of the 2-chain: 5 classes."""
    return build_free_extension(two_chain, workers=1)
