"""Parsed contents of a structure file."""

from dataclasses import dataclass

from src.models.closure_set import ClosureSet
from src.models.semilattice import SpecSemilattice


@dataclass(frozen=True)
class StructureFile:
    """A named specialization semilattice with an optional designated Z.

    Attributes:
        name: Name given in the file.
        structure: The parsed structure.
        z: Designated closures, if the file lists any.
    """

    name: str
    structure: SpecSemilattice
    z: ClosureSet | None = None

    def __iter__(self):
        # unpacks as (structure, z)
        return iter((self.structure, self.z))
