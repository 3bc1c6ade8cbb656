"""Bijective weak maps, and the explicit maps that recover the factors of a free product.

A bijection ``phi: P -> Q`` is a weak map when the preimage of every
independent set of ``Q`` is independent in ``P``.  Independent sets are closed
under subsets, so it is enough to test the preimages of the bases of ``Q``.
"""
from __future__ import annotations

from collections.abc import Mapping

from .core import Matroid, rank
from .iso import Bijection, inverse
from .masks import elements, full, popcount, relabel as relabel_mask
from .product import free_product


class TheoremHypothesisError(ValueError):
    pass


def _check_sizes(P: Matroid, Q: Matroid, size: int | None = None) -> None:
    if P.n != Q.n or (size is not None and size != P.n):
        raise ValueError(f"weak maps need equal ground sets, got {P.n}, {Q.n}, {size}")


def is_weak_map(P: Matroid, Q: Matroid, phi: Bijection) -> bool:
    _check_sizes(P, Q, len(phi))
    back = inverse(phi)
    indep = P.independents
    return all(relabel_mask(b, back) in indep for b in Q.bases)


def find_weak_map(P: Matroid, Q: Matroid) -> Bijection | None:
    """The lexicographically least weak map ``P -> Q`` in one-line notation, or None."""
    _check_sizes(P, Q)
    n = P.n
    if Q.rank > P.rank:
        return None
    indep_p = P.independents
    by_elem: list[list[int]] = [[I for I in Q.independents if I >> j & 1] for j in range(n)]
    forward = [0] * n
    back = [0] * n

    def ok(j: int, image: int) -> bool:
        for I in by_elem[j]:
            if I & ~image:
                continue
            pre = 0
            for e in elements(I):
                pre |= 1 << back[e]
            if pre not in indep_p:
                return False
        return True

    def search(i: int, image: int) -> bool:
        if i == n:
            return True
        for j in range(n):
            if image >> j & 1:
                continue
            forward[i] = j
            back[j] = i
            if ok(j, image | 1 << j) and search(i + 1, image | 1 << j):
                return True
        return False

    return tuple(forward) if search(0, 0) else None


def theorem_phi(
    M: Matroid,
    N: Matroid,
    U: int,
    f: Mapping[int, int] | None = None,
    L: Matroid | None = None,
) -> tuple[Bijection, Bijection]:
    """Maps ``L|U -> M`` and ``L/U -> N`` for ``L = M □ N``.

    ``U`` must have ``M.n`` elements and rank ``rank(M)`` in ``L``.  With
    ``V`` the complement of ``U``, the underlying map swaps ``V & S`` with
    ``U & T`` through ``f`` (ascending pairing by default) and fixes every
    other element.  Both maps are returned in one-line notation on the
    re-indexed minors.
    """
    if L is None:
        L = free_product(M, N)
    n = M.n
    if U >> L.n or popcount(U) != n:
        raise TheoremHypothesisError(f"U must be a {n}-subset of the {L.n}-element product")
    if rank(L, U) != M.rank:
        raise TheoremHypothesisError(f"rank of U is {rank(L, U)}, not rank(M) = {M.rank}")
    S = full(n)
    V = L.ground & ~U
    v_s = elements(V & S)
    u_t = elements(U & ~S)
    if f is None:
        f = dict(zip(v_s, u_t))
    if sorted(f) != list(v_s) or sorted(f.values()) != list(u_t):
        raise ValueError("f must be a bijection from V & S onto U & T")
    phi = list(range(L.n))
    for x, y in f.items():
        phi[x] = y
        phi[y] = x
    phi1 = tuple(phi[u] for u in elements(U))
    phi2 = tuple(phi[v] - n for v in elements(V))
    return phi1, phi2
