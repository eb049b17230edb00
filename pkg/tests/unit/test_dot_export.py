"""Unit tests for DOT export."""

from src.services.dot_export import cover_edges, export_dot
from src.services.examples_factory import chain


def test_cover_edges_skip_transitive_pairs():
    assert cover_edges(chain(3)) == [(0, 1), (1, 2)]


def test_powerset_covers(sierpinski):
    assert cover_edges(sierpinski) == [(0, 1), (0, 2), (1, 3), (2, 3)]


def test_plain_structure_has_no_boxes(sierpinski):
    """Test that extra specialization pairs are dashed and nothing is boxed."""
    text = export_dot(sierpinski, "sierpinski")

    assert "shape=box" not in text
    assert '  n2 -> n1 [style=dashed, constraint=false];' in text.splitlines()
    assert '  n0 [label="{}"];' in text.splitlines()


def test_name_is_quoted():
    assert export_dot(chain(1), 'a "b"').startswith('digraph "a \\"b\\"" {\n')


def test_extension_boxes_embedded_classes(two_chain_extension):
    lines = export_dot(two_chain_extension, "two-chain").splitlines()

    boxed = [line for line in lines if "shape=box" in line]
    assert boxed == ['  n0 [label="[0,∅]", shape=box];', '  n3 [label="[1,∅]", shape=box];']
