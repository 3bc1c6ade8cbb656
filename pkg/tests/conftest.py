from __future__ import annotations

from itertools import combinations, permutations

import pytest
from hypothesis import strategies as st

from matroidlab.core import Matroid, parse_literal, relabel
from matroidlab.enumeration import enumerate_matroids


def brute_rank(M: Matroid, A: int) -> int:
    """Largest subset of A contained in a basis, searched by size downward."""
    elems = [i for i in range(M.n) if A >> i & 1]
    for size in range(len(elems), -1, -1):
        for combo in combinations(elems, size):
            mask = sum(1 << i for i in combo)
            if any(mask & b == mask for b in M.bases):
                return size
    raise AssertionError("unreachable")


def brute_isomorphic(M: Matroid, N: Matroid) -> bool:
    if M.n != N.n:
        return False
    target = set(N.bases)
    for p in permutations(range(M.n)):
        if {sum(1 << p[i] for i in range(M.n) if b >> i & 1) for b in M.bases} == target:
            return True
    return False


def catalog_upto(nmax: int) -> list[Matroid]:
    return [M for n in range(nmax + 1) for M in enumerate_matroids(n)]


@st.composite
def relabelled(draw, nmax: int = 5):
    """A catalog matroid on at most ``nmax`` elements under a random relabelling."""
    M = draw(st.sampled_from(catalog_upto(nmax)))
    perm = draw(st.permutations(list(range(M.n))))
    return relabel(M, perm)


@pytest.fixture
def line():
    return parse_literal("3:0,1;0,2;1,2")


@pytest.fixture
def double_points():
    # elements d, e, f, g = 0, 1, 2, 3; double points {d,e} and {f,g}
    return parse_literal("4:0,2;0,3;1,2;1,3")
