"""Contract test: config-schema.yaml documents exactly what Config reads."""

import os
from pathlib import Path

import yaml

from src.config import Config


def load_schema():
    schema_path = (
        Path(__file__).parent.parent.parent
        / "specs"
        / "001-specialization-semilattices"
        / "contracts"
        / "config-schema.yaml"
    )
    with open(schema_path) as f:
        return yaml.safe_load(f)["environment_variables"]


def test_documented_defaults_match(monkeypatch):
    """Test that every documented default is what an empty environment yields."""
    for key in list(os.environ):
        if key.startswith("SPECLAT_"):
            monkeypatch.delenv(key, raising=False)
    config = Config.from_env()

    for key, spec in load_schema().items():
        field = key.removeprefix("SPECLAT_").lower()
        assert getattr(config, field) == spec["default"], key


def test_every_field_documented():
    documented = {key.removeprefix("SPECLAT_").lower() for key in load_schema()}

    assert documented == set(Config.__dataclass_fields__)
