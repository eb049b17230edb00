"""Quotient of a pair space: the free principal extension and its Z-variant."""

from dataclasses import dataclass, field

import numpy as np

from src.models.pair import Pair, PairSpace
from src.models.semilattice import ClosureSemilattice, SpecSemilattice
from src.utils.relation import readonly


@dataclass(frozen=True, eq=False)
class Extension:
    """Classes of pairs with their join, closure, specialization and embedding.

    Attributes:
        base: The structure S that was extended.
        space: Enumerated pairs over S.
        result: Specialization semilattice on the classes. Element labels are
            the bracket labels of the class representatives.
        closure: closure[c] is the class K(c).
        upsilon: upsilon[a] is the class of (a, {}).
        pair_class: pair_class[i] is the class of space pair i.
        representatives: representatives[c] is the least pair of class c
            among all raw pairs, whether or not the space lists it.
        z: Designated closures whose preservation the build enforced
            (empty for the plain extension).

    Classes are numbered in order of their representatives.
    """

    base: SpecSemilattice
    space: PairSpace
    result: SpecSemilattice
    closure: np.ndarray
    upsilon: np.ndarray
    pair_class: np.ndarray
    representatives: tuple[Pair, ...]
    z: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        for name in ("closure", "upsilon", "pair_class"):
            object.__setattr__(
                self, name, readonly(np.asarray(getattr(self, name), dtype=np.int64))
            )

    @property
    def size(self) -> int:
        return self.result.size

    @property
    def normalized(self) -> bool:
        return self.space.normalized

    def class_of(self, p: Pair) -> int:
        """Class of an arbitrary pair over the base."""
        p = p.check(self.base.size)
        if self.space.normalized:
            p = p.normalized(self.base)
        return int(self.pair_class[self.space.index_of(p)])

    def representative(self, c: int) -> Pair:
        return self.representatives[c]

    def members(self, c: int) -> list[Pair]:
        """All enumerated pairs of class c, in canonical order."""
        return [self.space.pair(int(i)) for i in np.flatnonzero(self.pair_class == c)]

    def k(self, c: int) -> int:
        return int(self.closure[c])

    def label(self, c: int) -> str:
        return self.result.labels[c]

    def closure_semilattice(self) -> ClosureSemilattice:
        return ClosureSemilattice(base=self.result.base, closure=self.closure)

    def __repr__(self) -> str:
        return (
            f"Extension(base_size={self.base.size}, classes={self.size}, "
            f"pairs={self.space.size}, z={sorted(self.z)})"
        )
