"""Maps between finite structures."""

from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np

from src.models.errors import HomomorphismError
from src.utils.relation import readonly


class HomKind(str, Enum):
    """Kinds of structure-preserving map, each strengthening the previous."""

    JOIN = "join-hom"
    SPEC = "spec-hom"
    K_HOM = "K-hom"
    EMBEDDING = "embedding"


@dataclass(frozen=True, eq=False)
class Homomorphism:
    """A total map table dom -> cod tagged with the kind it was checked as.

    Attributes:
        dom: Domain structure (JoinSemilattice, SpecSemilattice or the result
            of an Extension).
        cod: Codomain structure.
        table: Length-|dom| array, table[x] is the image of x.
        kind: Kind the map was validated as.

    Composition is diagrammatic: compose(f, g) applies f first.
    """

    dom: Any
    cod: Any
    table: np.ndarray
    kind: HomKind = HomKind.JOIN

    def __post_init__(self) -> None:
        try:
            table = np.array(self.table, dtype=np.int64)
        except (TypeError, ValueError) as e:
            raise HomomorphismError(f"Map table is not an integer table: {e}")
        if table.shape != (self.dom.size,):
            raise HomomorphismError(
                f"Map table must have length {self.dom.size}, got shape {table.shape}"
            )
        out_of_range = np.flatnonzero((table < 0) | (table >= self.cod.size))
        if len(out_of_range):
            x = int(out_of_range[0])
            raise HomomorphismError(
                f"Image of {x} is {int(table[x])}, outside the codomain "
                f"0..{self.cod.size - 1}",
                witness=(x,),
            )
        object.__setattr__(self, "table", readonly(table))
        object.__setattr__(self, "kind", HomKind(self.kind))

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.table)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Homomorphism):
            return NotImplemented
        return np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    def __repr__(self) -> str:
        return f"Homomorphism({self.kind.value}, {list(self.as_tuple())})"
