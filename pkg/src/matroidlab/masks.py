"""Subsets of a ground set {0, ..., n-1} encoded as plain ``int`` bitmasks.

Bit ``i`` is set iff element ``i`` is present.  The width of a mask is never
stored on the mask itself; it is the ground-set size of whatever matroid the
mask is used with.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator
from itertools import combinations

# Ground sets larger than this are rejected everywhere.
MAX_N = 32


def full(n: int) -> int:
    return (1 << n) - 1


def popcount(mask: int) -> int:
    return mask.bit_count()


def from_elements(elements: Iterable[int]) -> int:
    mask = 0
    for i in elements:
        mask |= 1 << i
    return mask


def elements(mask: int) -> tuple[int, ...]:
    """Ascending tuple of the elements of ``mask``."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the single-bit masks of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


def complement(mask: int, n: int) -> int:
    return full(n) & ~mask


def subsets(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, ascending."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def k_subsets(n: int, k: int) -> list[int]:
    """All ``k``-element subsets of ``range(n)`` in ascending mask order."""
    return sorted(from_elements(c) for c in combinations(range(n), k))


def compress(mask: int, support: int) -> int:
    """Re-index ``mask & support`` so the elements of ``support`` become 0, 1, ..."""
    out = 0
    pos = 0
    for bit in iter_bits(support):
        if mask & bit:
            out |= 1 << pos
        pos += 1
    return out


def expand(mask: int, support: int) -> int:
    """Inverse of :func:`compress`: place bit ``j`` on the ``j``-th element of ``support``."""
    out = 0
    for j, bit in enumerate(iter_bits(support)):
        if mask >> j & 1:
            out |= bit
    return out


def relabel(mask: int, forward: tuple[int, ...] | list[int]) -> int:
    """Image of ``mask`` under the element map ``i -> forward[i]``."""
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << forward[i]
        mask >>= 1
        i += 1
    return out


def check_width(mask: int, n: int) -> None:
    if mask < 0 or mask >> n:
        raise ValueError(f"subset mask {mask:#b} does not fit a ground set of size {n}")


def format_subset(mask: int) -> str:
    """Subset literal: comma-separated ascending indices, or ``e`` when empty."""
    if not mask:
        return "e"
    return ",".join(str(i) for i in elements(mask))
