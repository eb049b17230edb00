"""Bitmask helpers for finite subsets of a carrier.

Subsets of {0, ..., n-1} are encoded as Python ints (bit i set iff i is a
member). Pair spaces and powerset constructions index their elements by these
masks.
"""

from typing import Iterable


POINT_NAMES = "pqrstuvw"


def mask_of(indices: Iterable[int]) -> int:
    """Encode an index set as a bitmask.

    Examples:
        >>> mask_of([0, 2])
        5
        >>> mask_of([])
        0
    """
    mask = 0
    for index in indices:
        if index < 0:
            raise ValueError(f"Negative index {index} cannot be encoded")
        mask |= 1 << index
    return mask


def members(mask: int) -> tuple[int, ...]:
    """Decode a bitmask into its sorted member indices.

    Examples:
        >>> members(5)
        (0, 2)
        >>> members(0)
        ()
    """
    result = []
    index = 0
    while mask:
        if mask & 1:
            result.append(index)
        mask >>= 1
        index += 1
    return tuple(result)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def point_name(index: int) -> str:
    """Name of a ground-set point: p, q, r, ... then x8, x9, ..."""
    if index < len(POINT_NAMES):
        return POINT_NAMES[index]
    return f"x{index}"


def subset_label(mask: int) -> str:
    """Display label of a subset of the ground set.

    Examples:
        >>> subset_label(0)
        '{}'
        >>> subset_label(3)
        '{p,q}'
    """
    return "{" + ",".join(point_name(i) for i in members(mask)) + "}"


def parse_points(names: Iterable[str], ground_size: int) -> int:
    """Encode a list of point names (as produced by point_name) as a mask.

    Raises:
        ValueError: If a name is unknown or outside the ground set.
    """
    lookup = {point_name(i): i for i in range(ground_size)}
    mask = 0
    for name in names:
        if name not in lookup:
            raise ValueError(
                f"Unknown point {name!r} for a ground set of size {ground_size}"
            )
        mask |= 1 << lookup[name]
    return mask
