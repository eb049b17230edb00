"""Contract tests for structure files.

Validates fixtures and serializer output against structure-file-schema.json.
"""

import json
from pathlib import Path

import pytest
import yaml
from jsonschema import ValidationError, validate

from src.models.powerset import Ideal
from src.services.examples_factory import mod_ideal, random_spec_semilattice
from src.services.structure_io import serialize_structure
from src.services.z_extension import all_closures


CONTRACTS = Path(__file__).parent.parent.parent / "specs" / "001-specialization-semilattices" / "contracts"
FIXTURES = Path(__file__).parent.parent / "fixtures"


def load_schema():
    """Load the JSON schema for structure files."""
    with open(CONTRACTS / "structure-file-schema.json") as f:
        return json.load(f)


class TestStructureFileContract:
    """Test that accepted inputs and produced files conform to the schema."""

    @pytest.mark.parametrize(
        "name", sorted(p.name for p in FIXTURES.iterdir() if p.suffix in (".json", ".yaml"))
    )
    def test_fixtures_conform(self, name):
        """Test every fixture, including axiom-invalid ones (the schema is structural)."""
        data = yaml.safe_load((FIXTURES / name).read_text(encoding="utf-8"))

        validate(instance=data, schema=load_schema())

    def test_serialized_output_conforms(self, sierpinski):
        text = serialize_structure(sierpinski, all_closures(sierpinski), "sierpinski")

        validate(instance=json.loads(text), schema=load_schema())

    def test_random_structures_conform(self):
        schema = load_schema()
        for seed in range(5):
            structure = random_spec_semilattice(seed, 4)
            validate(instance=json.loads(serialize_structure(structure, name=f"random-{seed}")), schema=schema)

    def test_serialized_text_is_deterministic(self):
        structure = mod_ideal(2, Ideal.generated_by(2, [0b01]))

        assert serialize_structure(structure) == serialize_structure(structure)
        assert serialize_structure(structure).endswith("}\n")

    def test_unknown_field_rejected(self):
        data = {"name": "x", "join": [[0]], "specialization": "leq", "colour": "red"}

        with pytest.raises(ValidationError):
            validate(instance=data, schema=load_schema())

    def test_unknown_specialization_form_rejected(self):
        data = {"name": "x", "join": [[0]], "specialization": {"closure": [0]}}

        with pytest.raises(ValidationError):
            validate(instance=data, schema=load_schema())
