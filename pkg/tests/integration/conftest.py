"""Fixtures for end-to-end runs."""

import logging
import os

import pytest


@pytest.fixture(autouse=True)
def isolated_cli(monkeypatch):
    """Run each test without SPECLAT_* overrides and restore the root logger afterwards."""
    for key in list(os.environ):
        if key.startswith("SPECLAT_"):
            monkeypatch.delenv(key, raising=False)
    root = logging.getLogger()
    saved_handlers, saved_level = root.handlers[:], root.level
    yield
    root.handlers[:] = saved_handlers
    root.setLevel(saved_level)
