"""Finite join-semilattices, specialization semilattices and closure semilattices.

Elements are dense indices 0..n-1. Tables are numpy arrays marked read-only,
so every structure is immutable after construction and safe to share between
worker threads.
"""

from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable

import numpy as np

from src.models.errors import StructureError
from src.utils.relation import readonly


def _check_labels(labels: Iterable[str] | None, size: int) -> tuple[str, ...]:
    if labels is None:
        return tuple(str(i) for i in range(size))
    labels = tuple(str(label) for label in labels)
    if len(labels) != size:
        raise StructureError(
            f"Expected {size} labels, got {len(labels)}"
        )
    if len(set(labels)) != size:
        duplicates = sorted({label for label in labels if labels.count(label) > 1})
        raise StructureError(f"Duplicate element labels: {', '.join(duplicates)}")
    return labels


@dataclass(frozen=True, eq=False)
class JoinSemilattice:
    """Finite carrier with a total join table.

    Attributes:
        join: n x n table, join[x, y] is the index of x v y.
        labels: Display name per element (defaults to the index).

    The table is only range-checked here; the semilattice laws are checked by
    services.core.validate_join_table so that broken tables can still be
    inspected and reported on.
    """

    join: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        try:
            table = np.array(self.join, dtype=np.int64)
        except (TypeError, ValueError) as e:
            raise StructureError(f"Join table is not a rectangular integer table: {e}")

        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise StructureError(
                f"Join table must be square, got shape {table.shape}"
            )
        n = table.shape[0]
        if n < 1:
            raise StructureError("Carrier must have at least one element")

        out_of_range = np.argwhere((table < 0) | (table >= n))
        if len(out_of_range):
            x, y = (int(v) for v in out_of_range[0])
            raise StructureError(
                f"Join table entry ({x}, {y}) = {int(table[x, y])} "
                f"is outside the carrier 0..{n - 1}",
                witness=(x, y),
            )

        object.__setattr__(self, "join", readonly(table))
        object.__setattr__(self, "labels", _check_labels(self.labels, n))

    @property
    def size(self) -> int:
        return self.join.shape[0]

    @cached_property
    def leq_matrix(self) -> np.ndarray:
        """Induced order: leq_matrix[x, y] iff join(x, y) = y."""
        return readonly(self.join == np.arange(self.size)[None, :])

    def check_element(self, x: int) -> int:
        """Return x as an int, raising StructureError if outside the carrier."""
        if not 0 <= int(x) < self.size:
            raise StructureError(
                f"Element {x} is outside the carrier 0..{self.size - 1}",
                witness=(x,),
            )
        return int(x)

    def join_of(self, x: int, y: int) -> int:
        return int(self.join[x, y])

    def join_all(self, elements: Iterable[int]) -> int:
        """Join of a nonempty collection of elements."""
        elements = list(elements)
        if not elements:
            raise ValueError("Join of an empty collection is undefined")
        return reduce(self.join_of, elements)

    def leq(self, x: int, y: int) -> bool:
        return bool(self.leq_matrix[x, y])

    def label(self, x: int) -> str:
        return self.labels[x]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise StructureError(f"Unknown element label {label!r}") from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, JoinSemilattice):
            return NotImplemented
        return np.array_equal(self.join, other.join)

    def __hash__(self) -> int:
        return hash(("join", self.join.shape, self.join.tobytes()))

    def __repr__(self) -> str:
        return f"JoinSemilattice(size={self.size})"


@dataclass(frozen=True, eq=False)
class SpecSemilattice:
    """A join-semilattice with a specialization relation.

    Attributes:
        base: Underlying join-semilattice.
        spec: n x n boolean matrix, spec[x, y] reads "x is specialized by y".
    """

    base: JoinSemilattice
    spec: np.ndarray

    def __post_init__(self) -> None:
        relation = np.array(self.spec, dtype=bool)
        n = self.base.size
        if relation.shape != (n, n):
            raise StructureError(
                f"Specialization relation must have shape ({n}, {n}), "
                f"got {relation.shape}"
            )
        object.__setattr__(self, "spec", readonly(relation))

    @classmethod
    def from_order(cls, base: JoinSemilattice) -> "SpecSemilattice":
        """The least specialization: the order itself."""
        return cls(base=base, spec=base.leq_matrix.copy())

    @classmethod
    def from_pairs(
        cls, base: JoinSemilattice, pairs: Iterable[tuple[int, int]]
    ) -> "SpecSemilattice":
        """Relation holding exactly on the listed pairs (no completion)."""
        relation = np.zeros((base.size, base.size), dtype=bool)
        for x, y in pairs:
            relation[base.check_element(x), base.check_element(y)] = True
        return cls(base=base, spec=relation)

    @property
    def size(self) -> int:
        return self.base.size

    @property
    def labels(self) -> tuple[str, ...]:
        return self.base.labels

    @property
    def leq_matrix(self) -> np.ndarray:
        return self.base.leq_matrix

    def specializes(self, x: int, y: int) -> bool:
        return bool(self.spec[x, y])

    def leq(self, x: int, y: int) -> bool:
        return self.base.leq(x, y)

    def join_of(self, x: int, y: int) -> int:
        return self.base.join_of(x, y)

    def pairs(self) -> list[tuple[int, int]]:
        """All (x, y) with x specialized by y, sorted."""
        return [(int(x), int(y)) for x, y in np.argwhere(self.spec)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpecSemilattice):
            return NotImplemented
        return self.base == other.base and np.array_equal(self.spec, other.spec)

    def __hash__(self) -> int:
        return hash((self.base, self.spec.tobytes()))

    def __repr__(self) -> str:
        return f"SpecSemilattice(size={self.size}, pairs={int(self.spec.sum())})"


@dataclass(frozen=True, eq=False)
class ClosureSemilattice:
    """A join-semilattice with a unary closure map.

    Attributes:
        base: Underlying join-semilattice.
        closure: Length-n array, closure[x] is the index of K(x).

    Additivity K(x v y) = K(x) v K(y) is not required.
    """

    base: JoinSemilattice
    closure: np.ndarray

    def __post_init__(self) -> None:
        try:
            table = np.array(self.closure, dtype=np.int64)
        except (TypeError, ValueError) as e:
            raise StructureError(f"Closure map is not an integer table: {e}")
        n = self.base.size
        if table.shape != (n,):
            raise StructureError(
                f"Closure map must have length {n}, got shape {table.shape}"
            )
        out_of_range = np.flatnonzero((table < 0) | (table >= n))
        if len(out_of_range):
            x = int(out_of_range[0])
            raise StructureError(
                f"Closure of {x} is {int(table[x])}, outside the carrier 0..{n - 1}",
                witness=(x,),
            )
        object.__setattr__(self, "closure", readonly(table))

    @property
    def size(self) -> int:
        return self.base.size

    @property
    def labels(self) -> tuple[str, ...]:
        return self.base.labels

    def k(self, x: int) -> int:
        return int(self.closure[x])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClosureSemilattice):
            return NotImplemented
        return self.base == other.base and np.array_equal(self.closure, other.closure)

    def __hash__(self) -> int:
        return hash((self.base, self.closure.tobytes()))

    def __repr__(self) -> str:
        return f"ClosureSemilattice(size={self.size})"


Structure = JoinSemilattice | SpecSemilattice


def base_of(structure: Structure) -> JoinSemilattice:
    """The join-semilattice underlying a structure."""
    if isinstance(structure, SpecSemilattice):
        return structure.base
    return structure
