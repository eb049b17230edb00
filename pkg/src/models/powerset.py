"""Finite ground sets, their powersets and ideals of subsets.

Subsets of the ground set {p, q, r, ...} are bitmasks; the powerset
semilattice uses the mask itself as the element index, so element m is the
subset with mask m and join is bitwise or.
"""

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from src.models.errors import StructureError
from src.models.semilattice import JoinSemilattice
from src.utils.bitset import subset_label


@dataclass(frozen=True)
class GroundSet:
    """The finite set X = {0, ..., size-1}."""

    size: int

    def __post_init__(self) -> None:
        if self.size < 0:
            raise StructureError(f"Ground set size must be non-negative, got {self.size}")

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def powerset(self) -> JoinSemilattice:
        """Union semilattice on all 2^size subsets, labelled like {p,q}."""
        idx = np.arange(1 << self.size)
        return JoinSemilattice(
            join=idx[:, None] | idx[None, :],
            labels=tuple(subset_label(m) for m in idx),
        )


@dataclass(frozen=True)
class Ideal:
    """An ideal of subsets of a ground set, stored by its maximal members.

    Attributes:
        ground_size: Size of the ground set.
        maximal: Masks of the maximal members. Non-maximal generators are
            dropped on construction.

    A family given by maximal members is downward closed by definition. It
    contains the empty set iff it is nonempty, and it is union closed iff it
    has exactly one maximal member.

    Raises:
        StructureError: If no generator is given, a generator lies outside the
            ground set, or two maximal members exist (witness: their masks).
    """

    ground_size: int
    maximal: tuple[int, ...]

    def __post_init__(self) -> None:
        full = GroundSet(self.ground_size).full
        masks = sorted({int(m) for m in self.maximal})
        for m in masks:
            if m < 0 or m & ~full:
                raise StructureError(
                    f"Ideal member {m} is not a subset of a ground set of size "
                    f"{self.ground_size}",
                    witness=(m,),
                )
        if not masks:
            raise StructureError("Ideal must contain the empty set")
        maximal = tuple(m for m in masks if not any(m != o and m & o == m for o in masks))
        if len(maximal) > 1:
            m1, m2 = maximal[0], maximal[1]
            raise StructureError(
                f"Ideal is not closed under union: {subset_label(m1)} and "
                f"{subset_label(m2)} are members but their union is not",
                witness=(m1, m2),
            )
        object.__setattr__(self, "maximal", maximal)

    @classmethod
    def generated_by(cls, ground_size: int, masks: Iterable[int]) -> "Ideal":
        return cls(ground_size=ground_size, maximal=tuple(masks))

    @property
    def top(self) -> int:
        return self.maximal[0]
