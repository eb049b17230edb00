"""Pairs (a, B) and the enumerated pair space of a finite structure.

A pair stands for the formal expression "a v K b1 v ... v K bh" with
B = {b1, ..., bh}. Within a PairSpace, B is stored as a bitmask over the
carrier of the base structure.
"""

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from src.models.errors import StructureError
from src.models.semilattice import SpecSemilattice
from src.utils.bitset import mask_of, members
from src.utils.relation import readonly


@dataclass(frozen=True)
class Pair:
    """An element (a, B) of S x S^{<w}.

    Attributes:
        a: Head element.
        bs: Finite set of elements whose closures are adjoined (may be empty).
    """

    a: int
    bs: frozenset[int] = frozenset()

    @classmethod
    def of(cls, a: int, bs: Iterable[int] = ()) -> "Pair":
        return cls(int(a), frozenset(int(b) for b in bs))

    @property
    def mask(self) -> int:
        return mask_of(self.bs)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Lexicographic key: head first, then B as a sorted sequence."""
        return (self.a, tuple(sorted(self.bs)))

    def check(self, size: int) -> "Pair":
        """Return self, raising StructureError if any member is outside 0..size-1."""
        for x in (self.a, *self.bs):
            if not 0 <= x < size:
                raise StructureError(
                    f"Pair {self} mentions {x}, outside the carrier 0..{size - 1}",
                    witness=(x,),
                )
        return self

    def normalized(self, structure: SpecSemilattice) -> "Pair":
        """Equivalent pair (a v b1 v ... v bh, reduced B).

        B is reduced by dropping every b specialized by some other member b'.
        Among mutually specialized members the smallest index is kept.
        """
        base = structure.base
        head = base.join_all([self.a, *self.bs])
        spec = structure.spec
        kept = [
            b
            for b in self.bs
            if not any(
                other != b and spec[b, other] and (not spec[other, b] or other < b)
                for other in self.bs
            )
        ]
        return Pair.of(head, kept)

    def label(self, labels: tuple[str, ...]) -> str:
        """Bracket label of the class this pair represents, e.g. "[0,{0,1}]"."""
        if not self.bs:
            return f"[{labels[self.a]},∅]"
        inner = ",".join(labels[b] for b in sorted(self.bs))
        return f"[{labels[self.a]},{{{inner}}}]"

    def __str__(self) -> str:
        inner = ",".join(str(b) for b in sorted(self.bs))
        return f"({self.a},{{{inner}}})"


@dataclass(frozen=True, eq=False)
class PairSpace:
    """All pairs considered by an extension build, in canonical order.

    Attributes:
        base: Structure the pairs range over.
        heads: heads[i] is the head a of pair i.
        masks: masks[i] is the bitmask of B of pair i.
        normalized: Whether only normal pairs were enumerated.

    Pairs are sorted by Pair.sort_key, so the first pair of any set of
    indices is its lexicographically least member.
    """

    base: SpecSemilattice
    heads: np.ndarray
    masks: np.ndarray
    normalized: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "heads", readonly(np.asarray(self.heads, dtype=np.int64)))
        object.__setattr__(self, "masks", readonly(np.asarray(self.masks, dtype=np.int64)))
        object.__setattr__(
            self,
            "_index",
            {(int(a), int(m)): i for i, (a, m) in enumerate(zip(self.heads, self.masks))},
        )

    @property
    def size(self) -> int:
        return len(self.heads)

    def pair(self, i: int) -> Pair:
        return Pair.of(self.heads[i], members(int(self.masks[i])))

    def pairs(self) -> list[Pair]:
        return [self.pair(i) for i in range(self.size)]

    def index_of(self, p: Pair) -> int:
        try:
            return self._index[(p.a, p.mask)]
        except KeyError:
            raise StructureError(f"Pair {p} is not in this pair space") from None

    def __len__(self) -> int:
        return self.size
