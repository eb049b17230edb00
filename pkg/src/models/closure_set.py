"""Designated sets of closures."""

from dataclasses import dataclass
from typing import Iterable

from src.models.errors import StructureError
from src.models.semilattice import SpecSemilattice
from src.services.core import closure_table


@dataclass(frozen=True)
class ClosureSet:
    """A set Z of elements of S, each of which is its own closure.

    Attributes:
        base: Structure the members belong to.
        members: Element indices of Z.

    Raises:
        StructureError: On construction, naming the first member that is not
            a closure.
    """

    base: SpecSemilattice
    members: frozenset[int]

    def __post_init__(self) -> None:
        members = frozenset(self.base.base.check_element(z) for z in self.members)
        closures = closure_table(self.base)
        for z in sorted(members):
            if closures[z] != z:
                raise StructureError(
                    f"Element {self.base.labels[z]} is not a closure "
                    f"(its closure is {self._describe(closures[z])})",
                    witness=(z,),
                )
        object.__setattr__(self, "members", members)

    def _describe(self, k: int | None) -> str:
        return "undefined" if k is None else self.base.labels[k]

    @classmethod
    def of(cls, base: SpecSemilattice, members: Iterable[int] = ()) -> "ClosureSet":
        return cls(base=base, members=frozenset(int(z) for z in members))

    def sorted(self) -> list[int]:
        return sorted(self.members)

    def __contains__(self, z: object) -> bool:
        return z in self.members

    def __iter__(self):
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self.members)
