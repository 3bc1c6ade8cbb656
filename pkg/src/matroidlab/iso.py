"""Canonical forms and isomorphism testing.

The canonical key of a matroid is the lexicographically least sorted tuple of
basis masks over every relabelling of its ground set.  Up to eight elements the
search runs over a cached table of all ``n!`` permutations; beyond that it only
visits permutations that send some basis onto ``{0, ..., r-1}``, which always
contain the minimiser because that mask is the smallest possible rank-``r`` set.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import factorial

import numpy as np

from .core import Matroid, relabel
from .masks import elements

Bijection = tuple[int, ...]

# Largest ground set for which canonical keys are computed.
ISO_MAX_N = 10
_TABLE_MAX_N = 8
_CHUNK = 4096


@dataclass(frozen=True, order=True)
class IsoKey:
    n: int
    rank: int
    canonical_bases: tuple[int, ...]


@lru_cache(maxsize=None)
def _perm_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    listed = list(permutations(range(n)))
    perms = np.array(listed, dtype=np.int64).reshape(len(listed), n)
    masks = np.arange(1 << n, dtype=np.int64)
    table = np.zeros((len(perms), 1 << n), dtype=np.int64)
    for i in range(n):
        bit = (masks >> i) & 1
        table += bit[None, :] << perms[:, i][:, None]
    return perms, table


def _lexmin_row(images: np.ndarray) -> int:
    """Index of the lexicographically least row of a row-sorted 2-d array."""
    rows = np.arange(images.shape[0])
    for col in range(images.shape[1]):
        column = images[rows, col]
        rows = rows[column == column.min()]
        if len(rows) == 1:
            break
    return int(rows[0])


def _images(bases: np.ndarray, n: int, perms: np.ndarray) -> np.ndarray:
    bits = (bases[:, None] >> np.arange(n)) & 1
    weights = np.left_shift(1, perms)
    return np.einsum("kn,pn->pk", bits, weights)


def _canonical_table(M: Matroid) -> tuple[tuple[int, ...], Bijection]:
    perms, table = _perm_table(M.n)
    images = np.sort(table[:, list(M.bases)], axis=1)
    best = _lexmin_row(images)
    return tuple(int(v) for v in images[best]), tuple(int(v) for v in perms[best])


def _restricted_perms(M: Matroid):
    """Permutations sending some basis onto ``{0, ..., r-1}``, in chunks."""
    n, r = M.n, M.rank
    if len(M.bases) * factorial(r) * factorial(n - r) >= factorial(n):
        it = permutations(range(n))
    else:
        def gen():
            for b in M.bases:
                inside = elements(b)
                outside = elements(M.ground & ~b)
                for low, high in product(permutations(range(r)), permutations(range(r, n))):
                    forward = [0] * n
                    for e, lab in zip(inside, low):
                        forward[e] = lab
                    for e, lab in zip(outside, high):
                        forward[e] = lab
                    yield forward
        it = gen()
    chunk = []
    for p in it:
        chunk.append(p)
        if len(chunk) == _CHUNK:
            yield np.array(chunk, dtype=np.int64)
            chunk = []
    if chunk:
        yield np.array(chunk, dtype=np.int64).reshape(len(chunk), n)


def _canonical_restricted(M: Matroid) -> tuple[tuple[int, ...], Bijection]:
    bases = np.array(M.bases, dtype=np.int64)
    best_key = None
    best_perm = None
    for perms in _restricted_perms(M):
        images = np.sort(_images(bases, M.n, perms), axis=1)
        i = _lexmin_row(images)
        key = tuple(int(v) for v in images[i])
        if best_key is None or key < best_key:
            best_key, best_perm = key, tuple(int(v) for v in perms[i])
    return best_key, best_perm


@lru_cache(maxsize=1 << 16)
def canonical_labelling(M: Matroid) -> tuple[tuple[int, ...], Bijection]:
    """Canonical basis tuple and one permutation of ``M`` that produces it."""
    if M.n > ISO_MAX_N:
        raise ValueError(f"canonical forms are limited to {ISO_MAX_N} elements, got {M.n}")
    if M.n <= _TABLE_MAX_N:
        return _canonical_table(M)
    return _canonical_restricted(M)


def canonical_key(M: Matroid) -> IsoKey:
    return IsoKey(M.n, M.rank, canonical_labelling(M)[0])


def canonical_form(M: Matroid) -> Matroid:
    return Matroid(M.n, canonical_labelling(M)[0])


def identity(n: int) -> Bijection:
    return tuple(range(n))


def inverse(phi: Bijection) -> Bijection:
    inv = [0] * len(phi)
    for i, j in enumerate(phi):
        inv[j] = i
    return tuple(inv)


def compose(psi: Bijection, phi: Bijection) -> Bijection:
    """``psi o phi``: first ``phi``, then ``psi``."""
    return tuple(psi[j] for j in phi)


def format_bijection(phi: Bijection) -> str:
    return ",".join(map(str, phi))


def parse_bijection(text: str, n: int) -> Bijection:
    try:
        phi = tuple(int(t) for t in text.split(",")) if text else ()
    except ValueError:
        raise ValueError(f"bad bijection literal {text!r}") from None
    if sorted(phi) != list(range(n)):
        raise ValueError(f"{text!r} is not a permutation of 0..{n - 1}")
    return phi


def is_isomorphic(M: Matroid, N: Matroid) -> Bijection | None:
    """A bijection carrying the bases of ``M`` exactly onto those of ``N``, or None."""
    if M.n != N.n or M.rank != N.rank or len(M.bases) != len(N.bases):
        return None
    if M.bases == N.bases:
        return identity(M.n)
    key_m, to_canon_m = canonical_labelling(M)
    key_n, to_canon_n = canonical_labelling(N)
    if key_m != key_n:
        return None
    phi = compose(inverse(to_canon_n), to_canon_m)
    assert relabel(M, phi) == N
    return phi
