"""Matroids stored by their bases, with the rank calculus and minor operations.

A :class:`Matroid` is a ground-set size ``n`` together with the sorted tuple of
its basis masks.  Construction always validates the basis axioms, so every
``Matroid`` value in circulation is a genuine matroid.
"""
from __future__ import annotations

import re
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .masks import (
    MAX_N,
    check_width,
    complement,
    compress,
    elements,
    from_elements,
    format_subset,
    full,
    iter_bits,
    k_subsets,
    popcount,
    relabel as relabel_mask,
    subsets,
)


# Basis families larger than this are exchange-checked with numpy.
_VECTOR_MIN = 48


class MatroidError(ValueError):
    """Input that does not describe a matroid."""


class EmptyFamily(MatroidError):
    pass


class UnequalCardinality(MatroidError):
    pass


class ExchangeViolation(MatroidError):
    def __init__(self, b1: int, b2: int, x: int):
        self.b1, self.b2, self.x = b1, b2, x
        super().__init__(
            f"basis exchange fails for B1={{{_fmt(b1)}}}, B2={{{_fmt(b2)}}}, "
            f"x={x}: no y in B2\\B1 makes (B1 - x) + y a basis"
        )


class LiteralError(ValueError):
    """Malformed matroid or subset literal."""


def _fmt(mask: int) -> str:
    return ",".join(map(str, elements(mask)))


def _first_violation(b1: int, b2: int, reach: dict[int, int]) -> int | None:
    gain = b2 & ~b1
    for xb in iter_bits(b1 & ~b2):
        if not reach[xb] & gain:
            return xb.bit_length() - 1
    return None


def _check_exchange(n: int, bases: tuple[int, ...]) -> None:
    members = set(bases)
    singles = [1 << i for i in range(n)]
    arr = np.array(bases, dtype=np.uint64) if len(bases) > _VECTOR_MIN else None
    for b1 in bases:
        # reach[x] = every y for which (b1 - x) + y is again a basis
        reach = {}
        rest = [yb for yb in singles if not b1 & yb]
        for xb in singles:
            if b1 & xb:
                stem = b1 ^ xb
                reach[xb] = sum(yb for yb in rest if stem | yb in members)
        if arr is None:
            for b2 in bases:
                x = _first_violation(b1, b2, reach)
                if x is not None:
                    raise ExchangeViolation(b1, b2, x)
            continue
        gain = arr & np.uint64(~b1 & full(n))
        bad = np.zeros(len(bases), dtype=bool)
        for xb, ys in reach.items():
            bad |= ((arr & np.uint64(xb)) == 0) & ((gain & np.uint64(ys)) == 0)
        if bad.any():
            b2 = bases[int(np.argmax(bad))]
            raise ExchangeViolation(b1, b2, _first_violation(b1, b2, reach))


@dataclass(frozen=True)
class Matroid:
    """A matroid on ``{0, ..., n-1}`` given by its bases.

    ``bases`` is normalised to a sorted tuple without duplicates.  Raises a
    :class:`MatroidError` subclass if the family violates the basis axioms.
    """

    n: int
    bases: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.n
        if not 0 <= n <= MAX_N:
            raise MatroidError(f"ground set size {n} outside 0..{MAX_N}")
        family = tuple(sorted(set(self.bases)))
        object.__setattr__(self, "bases", family)
        if not family:
            raise EmptyFamily("a matroid needs at least one basis")
        for b in family:
            if b < 0 or b >> n:
                raise MatroidError(f"basis mask {b:#b} does not fit a ground set of size {n}")
        r = popcount(family[0])
        for b in family:
            if popcount(b) != r:
                raise UnequalCardinality(
                    f"bases {{{_fmt(family[0])}}} and {{{_fmt(b)}}} have different sizes"
                )
        _check_exchange(n, family)

    @property
    def rank(self) -> int:
        return popcount(self.bases[0])

    @property
    def ground(self) -> int:
        return full(self.n)

    @cached_property
    def independents(self) -> frozenset[int]:
        out: set[int] = set()
        for b in self.bases:
            if b not in out:
                out.update(subsets(b))
        return frozenset(out)

    @cached_property
    def basis_set(self) -> frozenset[int]:
        return frozenset(self.bases)

    def __str__(self) -> str:
        return format_literal(self)


def from_bases(n: int, family: Iterable[int]) -> Matroid:
    return Matroid(n, tuple(family))


def _check(M: Matroid, A: int) -> None:
    check_width(A, M.n)


def rank(M: Matroid, A: int) -> int:
    _check(M, A)
    return max(popcount(b & A) for b in M.bases)


def nullity(M: Matroid, A: int) -> int:
    return popcount(A) - rank(M, A)


def rank_lack(M: Matroid, A: int) -> int:
    return M.rank - rank(M, A)


def is_independent(M: Matroid, A: int) -> bool:
    _check(M, A)
    return A in M.independents


def spans(M: Matroid, A: int) -> bool:
    return rank(M, A) == M.rank


def loops(M: Matroid) -> int:
    used = 0
    for b in M.bases:
        used |= b
    return M.ground & ~used


def isthmuses(M: Matroid) -> int:
    common = M.ground
    for b in M.bases:
        common &= b
    return common


def restrict(M: Matroid, A: int) -> Matroid:
    """``M|A``, re-indexed so the elements of ``A`` become 0, 1, ... in ascending order.

    ``masks.elements(A)`` is the matching index map back into ``M``.
    """
    r = rank(M, A)
    return Matroid(popcount(A), tuple(compress(b & A, A) for b in M.bases if popcount(b & A) == r))


def contract_through(M: Matroid, A: int, E: int) -> Matroid:
    """``M/A`` computed through the basis ``E`` of ``M|A``.

    The result does not depend on which basis of ``M|A`` is passed.
    """
    rest = complement(A, M.n)
    return Matroid(popcount(rest), tuple(compress(b, rest) for b in M.bases if b & A == E))


def contract(M: Matroid, A: int) -> Matroid:
    """``M/A`` on the complement of ``A``, re-indexed in ascending order."""
    r = rank(M, A)
    E = min(b & A for b in M.bases if popcount(b & A) == r)
    return contract_through(M, A, E)


def dual(M: Matroid) -> Matroid:
    g = M.ground
    return Matroid(M.n, tuple(g & ~b for b in M.bases))


def direct_sum(M: Matroid, N: Matroid) -> Matroid:
    shift = M.n
    return Matroid(M.n + N.n, tuple(b | c << shift for b in M.bases for c in N.bases))


def relabel(M: Matroid, forward: tuple[int, ...] | list[int]) -> Matroid:
    """Image of ``M`` under the element bijection ``i -> forward[i]``."""
    if sorted(forward) != list(range(M.n)):
        raise ValueError(f"{list(forward)} is not a permutation of 0..{M.n - 1}")
    return Matroid(M.n, tuple(relabel_mask(b, forward) for b in M.bases))


def uniform(k: int, n: int) -> Matroid:
    if not 0 <= k <= n:
        raise MatroidError(f"uniform matroid U({k},{n}) needs 0 <= k <= n")
    return Matroid(n, tuple(k_subsets(n, k)))


def free(n: int) -> Matroid:
    return uniform(n, n)


def zero(n: int) -> Matroid:
    return uniform(0, n)


# -- literals ---------------------------------------------------------------

_INDEX = re.compile(r"0|[1-9][0-9]*")


def _parse_index_list(text: str, n: int, what: str) -> int:
    if text == "e":
        return 0
    items = text.split(",")
    prev = -1
    mask = 0
    for tok in items:
        if not _INDEX.fullmatch(tok):
            raise LiteralError(f"bad element index {tok!r} in {what} {text!r}")
        i = int(tok)
        if i >= n:
            raise LiteralError(f"element {i} out of range for ground set of size {n}")
        if i <= prev:
            raise LiteralError(f"indices in {what} {text!r} must be strictly ascending")
        prev = i
        mask |= 1 << i
    return mask


def parse_literal(text: str) -> Matroid:
    """Parse ``<n>:<basis>(;<basis>)*``, e.g. ``3:0,1;0,2;1,2`` or ``1:e``."""
    head, sep, body = text.partition(":")
    if not sep or not _INDEX.fullmatch(head):
        raise LiteralError(f"matroid literal {text!r} must start with '<n>:'")
    n = int(head)
    if n > MAX_N:
        raise LiteralError(f"ground set size {n} exceeds the cap of {MAX_N}")
    if not body:
        raise LiteralError(f"matroid literal {text!r} lists no bases")
    family = []
    seen = set()
    for chunk in body.split(";"):
        b = _parse_index_list(chunk, n, "basis")
        if b in seen:
            raise LiteralError(f"duplicate basis {chunk!r} in {text!r}")
        seen.add(b)
        family.append(b)
    return Matroid(n, tuple(family))


def format_literal(M: Matroid) -> str:
    return f"{M.n}:" + ";".join(format_subset(b) for b in M.bases)


def parse_subset(text: str, n: int) -> int:
    """Subset literal: ``e`` or comma-separated ascending indices below ``n``."""
    return _parse_index_list(text, n, "subset")


__all__ = [
    "Matroid", "MatroidError", "EmptyFamily", "UnequalCardinality", "ExchangeViolation",
    "LiteralError", "from_bases", "rank", "nullity", "rank_lack", "is_independent", "spans",
    "loops", "isthmuses", "restrict", "contract", "contract_through", "dual", "direct_sum",
    "relabel", "uniform", "free", "zero", "parse_literal", "format_literal", "parse_subset",
    "from_elements",
]
