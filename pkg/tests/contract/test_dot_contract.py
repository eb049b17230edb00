"""Contract test for the DOT rendering of an extension.

The expected file is compared byte for byte, so any change to node order,
edge order or attribute syntax is a contract change.
"""

from pathlib import Path

from src.services.dot_export import export_dot


def test_two_chain_extension_dot(two_chain_extension):
    expected = (Path(__file__).parent.parent / "fixtures" / "two_chain_extension.dot").read_text(
        encoding="utf-8"
    )

    assert export_dot(two_chain_extension, "two-chain") == expected


def test_rendering_is_deterministic(two_chain_extension):
    assert export_dot(two_chain_extension, "x") == export_dot(two_chain_extension, "x")
