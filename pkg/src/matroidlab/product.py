"""The free product ``M □ N`` and the rank facts that let its factors be recovered.

Ground-set layout: ``M`` keeps indices ``0 .. M.n-1`` and ``N`` is shifted to
``M.n .. M.n+N.n-1``.  A subset ``A`` of the product splits as
``A & left_block`` (the part in ``M``) and ``A >> M.n`` (the part in ``N``).
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .core import (
    Matroid,
    MatroidError,
    contract,
    is_independent,
    isthmuses,
    loops,
    nullity,
    rank,
    rank_lack,
    restrict,
)
from .iso import canonical_key
from .masks import MAX_N, full, k_subsets, popcount, subsets


class NotAFreeProduct(ValueError):
    def __init__(self, k: int):
        self.k = k
        super().__init__(f"no {k}-element subset splits this matroid as a free product")


@dataclass(frozen=True)
class FactorSplit:
    left: Matroid
    right: Matroid
    witness: int

    def __post_init__(self):
        if popcount(self.witness) != self.left.n:
            raise ValueError("witness size must equal the left factor's ground set size")
        if self.witness >> (self.left.n + self.right.n):
            raise ValueError("witness does not fit the product ground set")


def _spanning_by_size(N: Matroid) -> dict[int, list[int]]:
    spanning = set()
    co = N.ground
    for c in N.bases:
        for extra in subsets(co & ~c):
            spanning.add(c | extra)
    by_size = defaultdict(list)
    for s in sorted(spanning):
        by_size[popcount(s)].append(s)
    return by_size


def free_product(M: Matroid, N: Matroid) -> Matroid:
    """``M □ N`` built straight from its bases.

    ``A`` is a basis iff its ``M``-part ``I`` is independent in ``M``, its
    ``N``-part ``J`` spans ``N`` and ``rank(M) - |I| == |J| - rank(N)``.
    """
    n, m = M.n, N.n
    if n + m > MAX_N:
        raise MatroidError(f"free product would have {n + m} elements, cap is {MAX_N}")
    spanning = _spanning_by_size(N)
    target = M.rank + N.rank
    bases = []
    for i in M.independents:
        for j in spanning.get(target - popcount(i), ()):
            bases.append(i | j << n)
    return Matroid(n + m, tuple(bases))


def in_free_product(M: Matroid, N: Matroid, A: int) -> bool:
    """Independence in ``M □ N`` by the defining criterion."""
    a_s = A & full(M.n)
    a_t = A >> M.n
    return is_independent(M, a_s) and rank_lack(M, a_s) >= nullity(N, a_t)


def free_product_reference(M: Matroid, N: Matroid) -> tuple[frozenset[int], tuple[int, ...]]:
    """Independent sets of ``M □ N`` by brute force over all subsets, and the
    inclusion-maximal ones among them.  Slow; meant as a cross-check."""
    size = M.n + N.n
    family = frozenset(A for A in range(1 << size) if in_free_product(M, N, A))
    maximal = tuple(
        A for A in sorted(family)
        if not any(A | 1 << e in family for e in range(size) if not A >> e & 1)
    )
    return family, maximal


def min_rank_over_k_subsets(L: Matroid, k: int) -> tuple[int, list[int]]:
    """Smallest rank of a ``k``-subset of ``L`` and every subset attaining it (ascending)."""
    if not 0 <= k <= L.n:
        raise ValueError(f"k={k} outside 0..{L.n}")
    best = None
    witnesses: list[int] = []
    for U in k_subsets(L.n, k):
        r = rank(L, U)
        if best is None or r < best:
            best, witnesses = r, [U]
        elif r == best:
            witnesses.append(U)
    return best, witnesses


def strict_rank_check(M: Matroid, N: Matroid, L: Matroid | None = None) -> bool:
    """Every ``|S|``-subset ``U`` of ``M □ N`` that meets a nonloop of ``N`` and whose
    complement meets a nonisthmus of ``M`` has rank strictly above ``rank(M)``."""
    if L is None:
        L = free_product(M, N)
    n = M.n
    left = full(n)
    nonloops_n = (N.ground & ~loops(N)) << n
    nonisthmus_m = left & ~isthmuses(M)
    for U in k_subsets(L.n, n):
        V = L.ground & ~U
        if U & nonloops_n and V & nonisthmus_m and rank(L, U) <= M.rank:
            return False
    return True


def count_factorizations(L: Matroid, M: Matroid, N: Matroid) -> int:
    """Number of subsets ``A`` with ``L|A ≅ M`` and ``L/A ≅ N``."""
    if L.n != M.n + N.n:
        raise ValueError(f"ground set sizes {L.n} != {M.n} + {N.n}")
    key_m, key_n = canonical_key(M), canonical_key(N)
    count = 0
    for A in k_subsets(L.n, M.n):
        if rank(L, A) != M.rank:
            continue
        if canonical_key(restrict(L, A)) == key_m and canonical_key(contract(L, A)) == key_n:
            count += 1
    return count


def recover_factors(L: Matroid, k: int) -> FactorSplit:
    """Split ``L`` as a free product whose left factor has ``k`` elements.

    Candidates are the ``k``-subsets of minimum rank, tried in ascending mask
    order; the first whose restriction and contraction rebuild ``L`` wins.
    """
    _, candidates = min_rank_over_k_subsets(L, k)
    target = canonical_key(L)
    for U in candidates:
        left, right = restrict(L, U), contract(L, U)
        if canonical_key(free_product(left, right)) == target:
            return FactorSplit(left, right, U)
    raise NotAFreeProduct(k)
