"""Boolean relation matrices.

A binary relation on n points is an n x n numpy bool array R with
R[x, y] meaning "x R y".
"""

import numpy as np


def readonly(array: np.ndarray) -> np.ndarray:
    """Return array marked read-only (structures are immutable)."""
    array.flags.writeable = False
    return array


def compose(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Relational composition: x (left;right) z iff x left y and y right z for some y."""
    product = left.astype(np.float32) @ right.astype(np.float32)
    return product > 0


def transitive_closure(relation: np.ndarray) -> np.ndarray:
    """Smallest transitive relation containing relation (Warshall)."""
    closure = relation.copy()
    for k in range(closure.shape[0]):
        closure |= closure[:, k, None] & closure[None, k, :]
    return closure


def is_reflexive(relation: np.ndarray) -> bool:
    return bool(relation[np.diag_indices_from(relation)].all())


def is_transitive(relation: np.ndarray) -> bool:
    return not bool((compose(relation, relation) & ~relation).any())


def transitivity_witness(relation: np.ndarray) -> tuple[int, int, int] | None:
    """Find x, y, z with x R y, y R z and not x R z, or None."""
    broken = compose(relation, relation) & ~relation
    hits = np.argwhere(broken)
    if len(hits) == 0:
        return None
    x, z = (int(v) for v in hits[0])
    y = int(np.flatnonzero(relation[x, :] & relation[:, z])[0])
    return (x, y, z)


def mutual_classes(preorder: np.ndarray) -> list[np.ndarray]:
    """Partition the points of a preorder into mutual-relation cells.

    Cells are listed in order of their smallest member; each cell is a sorted
    index array.
    """
    n = preorder.shape[0]
    assigned = np.full(n, False)
    cells = []
    for i in range(n):
        if assigned[i]:
            continue
        cell = np.flatnonzero(preorder[i, :] & preorder[:, i])
        assigned[cell] = True
        cells.append(cell)
    return cells
