"""Executable checks of the free-product structure theory over small catalogs.

Each ``check_*`` function runs one family of exhaustive checks and returns a
:class:`CheckResult`; ``run_all`` runs every family at a common size bound.
The CLI ``verify`` verb and the acceptance tests both go through here.
"""
from __future__ import annotations

import random
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from itertools import permutations

from .core import (
    Matroid,
    MatroidError,
    contract,
    direct_sum,
    dual,
    isthmuses,
    loops,
    parse_literal,
    rank,
    relabel,
    restrict,
    uniform,
)
from .enumeration import (
    ORACLE_MAX_N,
    enumerate_matroids,
    enumerate_matroids_by_independents,
    labelled_matroids,
    welsh_check,
)
from .iso import canonical_form, canonical_key, is_isomorphic
from .masks import elements, full, k_subsets, popcount
from .product import (
    free_product,
    free_product_reference,
    min_rank_over_k_subsets,
    recover_factors,
    strict_rank_check,
)
from .weakmaps import find_weak_map, is_weak_map, theorem_phi

CATALOG_MAX_N = 6
EMPTY = Matroid(0, (0,))
TWO_DOUBLE_POINTS = parse_literal("4:0,2;0,3;1,2;1,3")


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)
    note: str = ""

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        self.failures.append(message)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        text = f"{status}  {self.name}  cases={self.cases}"
        if self.note:
            text += f"  {self.note}"
        if self.failures:
            text += f"  first failure: {self.failures[0]}"
        return text


def factor_family(size: int) -> tuple[Matroid, ...]:
    """Catalog representatives on ``size`` elements; uniform matroids past the catalogs."""
    if size <= CATALOG_MAX_N:
        return enumerate_matroids(size).classes
    return tuple(uniform(k, size) for k in range(size + 1))


def catalog_pairs(max_total: int, min_total: int = 0) -> Iterator[tuple[Matroid, Matroid]]:
    for total in range(min_total, max_total + 1):
        for n in range(total + 1):
            for M in factor_family(n):
                for N in factor_family(total - n):
                    yield M, N


def _pair(M: Matroid, N: Matroid) -> str:
    return f"M={M} N={N}"


def check_validity(max_total: int = 8) -> CheckResult:
    res = CheckResult("free product is a matroid")
    for M, N in catalog_pairs(max_total):
        res.cases += 1
        try:
            free_product(M, N)
        except MatroidError as exc:
            res.fail(f"{_pair(M, N)}: {exc}")
    return res


def check_validity_random(count: int = 1000, min_total: int = 9, max_total: int = 12,
                          seed: int = 0) -> CheckResult:
    """Free products of random uniform sums and products beyond the catalogs."""
    rng = random.Random(seed)
    res = CheckResult("free product is a matroid (random, larger)")

    def random_matroid(size: int) -> Matroid:
        if size == 0:
            return EMPTY
        cut = rng.randint(0, size)
        parts = [size] if cut in (0, size) else [cut, size - cut]
        M = EMPTY
        for p in parts:
            piece = uniform(rng.randint(0, p), p)
            M = direct_sum(M, piece) if rng.random() < 0.5 else free_product(M, piece)
        perm = list(range(size))
        rng.shuffle(perm)
        return relabel(M, perm)

    for _ in range(count):
        total = rng.randint(min_total, max_total)
        n = rng.randint(0, total)
        M, N = random_matroid(n), random_matroid(total - n)
        res.cases += 1
        try:
            L = free_product(M, N)
        except MatroidError as exc:
            res.fail(f"{_pair(M, N)}: {exc}")
            continue
        if L.rank != M.rank + N.rank:
            res.fail(f"{_pair(M, N)}: rank {L.rank}")
    return res


def check_characterizations(max_total: int = 8) -> CheckResult:
    """Bases from the basis description equal the maximal sets of the independence criterion."""
    res = CheckResult("basis description matches independence criterion")
    for M, N in catalog_pairs(max_total):
        res.cases += 1
        L = free_product(M, N)
        family, maximal = free_product_reference(M, N)
        if family != L.independents or maximal != L.bases:
            res.fail(_pair(M, N))
    return res


def check_rank_and_units(max_total: int = 8) -> CheckResult:
    res = CheckResult("rank additivity and unit laws")
    for M, N in catalog_pairs(max_total):
        res.cases += 1
        L = free_product(M, N)
        if L.rank != M.rank + N.rank:
            res.fail(f"{_pair(M, N)}: rank {L.rank} != {M.rank} + {N.rank}")
    for size in range(max_total + 1):
        for M in factor_family(size):
            res.cases += 1
            if free_product(M, EMPTY) != M or free_product(EMPTY, M) != M:
                res.fail(f"unit law fails for {M}")
    return res


def check_minors(max_total: int = 7) -> CheckResult:
    res = CheckResult("restriction and contraction of the left block give the factors")
    for M, N in catalog_pairs(max_total):
        res.cases += 1
        L = free_product(M, N)
        S = full(M.n)
        if restrict(L, S) != M:
            res.fail(f"{_pair(M, N)}: restriction {restrict(L, S)}")
        elif contract(L, S) != N:
            res.fail(f"{_pair(M, N)}: contraction {contract(L, S)}")
    return res


def block_swap(n: int, m: int) -> tuple[int, ...]:
    """Relabelling that moves an ``m``-block followed by an ``n``-block to ``n`` then ``m``."""
    return tuple(n + i for i in range(m)) + tuple(range(n))


def check_duality(max_total: int = 7) -> CheckResult:
    res = CheckResult("dual of M□N is N*□M* after swapping blocks")
    for M, N in catalog_pairs(max_total):
        res.cases += 1
        lhs = dual(free_product(M, N))
        rhs = relabel(free_product(dual(N), dual(M)), block_swap(M.n, N.n))
        if lhs != rhs:
            res.fail(_pair(M, N))
    return res


def check_rank_bounds(max_total: int = 7) -> CheckResult:
    """Minimum |S|-subset rank is rank(M); it is exceeded exactly when U meets a
    nonloop of N and its complement meets a nonisthmus of M."""
    res = CheckResult("rank bounds on |S|-subsets")
    for M, N in catalog_pairs(max_total):
        res.cases += 1
        L = free_product(M, N)
        low, minimizers = min_rank_over_k_subsets(L, M.n)
        if low != M.rank or full(M.n) not in minimizers:
            res.fail(f"{_pair(M, N)}: minimum {low}, rank(M) {M.rank}")
            continue
        if not strict_rank_check(M, N, L):
            res.fail(f"{_pair(M, N)}: strict bound fails")
            continue
        nonloops_n = (N.ground & ~loops(N)) << M.n
        nonisthmus_m = full(M.n) & ~isthmuses(M)
        for U in k_subsets(L.n, M.n):
            hypotheses = bool(U & nonloops_n) and bool(L.ground & ~U & nonisthmus_m)
            if (rank(L, U) > M.rank) != hypotheses:
                res.fail(f"{_pair(M, N)}: U={elements(U)} rank {rank(L, U)}")
                break
    return res


def theorem_instances(M: Matroid, N: Matroid, L: Matroid) -> Iterator[int]:
    for U in k_subsets(L.n, M.n):
        if rank(L, U) == M.rank:
            yield U


def check_theorem(max_total: int = 7, random_f: int = 100, seed: int = 0) -> CheckResult:
    """Both explicit maps are weak maps, for the ascending pairing and for random pairings."""
    res = CheckResult("explicit maps L|U -> M and L/U -> N are weak")
    rng = random.Random(seed)
    draws = 0
    for M, N in catalog_pairs(max_total):
        L = free_product(M, N)
        S = full(M.n)
        for U in theorem_instances(M, N, L):
            res.cases += 1
            LU, LV = restrict(L, U), contract(L, U)
            v_s = elements(L.ground & ~U & S)
            u_t = list(elements(U & ~S))
            pairings = {None}
            for _ in range(random_f):
                rng.shuffle(u_t)
                pairings.add(tuple(u_t))
            draws += random_f
            for images in pairings:
                f = None if images is None else dict(zip(v_s, images))
                phi1, phi2 = theorem_phi(M, N, U, f=f, L=L)
                if not (is_weak_map(LU, M, phi1) and is_weak_map(LV, N, phi2)):
                    res.fail(f"{_pair(M, N)}: U={elements(U)} f={f}")
                    break
    res.note = f"random_f_draws={draws}"
    return res


def check_unique_factorization(max_total: int = 6) -> CheckResult:
    """Isomorphic products of pairs with equal left size come from isomorphic
    pairs, and ``recover_factors`` gets every pair back."""
    res = CheckResult("ordered factors are recovered up to isomorphism")
    for total in range(max_total + 1):
        for n in range(total + 1):
            seen: dict = {}
            for M in factor_family(n):
                for N in factor_family(total - n):
                    res.cases += 1
                    L = free_product(M, N)
                    key = canonical_key(L)
                    pair = (canonical_key(M), canonical_key(N))
                    if seen.setdefault(key, pair) != pair:
                        res.fail(f"{_pair(M, N)} collides with another pair")
                        continue
                    split = recover_factors(L, n)
                    if is_isomorphic(split.left, M) is None or is_isomorphic(split.right, N) is None:
                        res.fail(f"{_pair(M, N)}: recovered {split.left}, {split.right}")
    return res


def check_welsh(max_total: int = 6) -> CheckResult:
    res = CheckResult("product map on isomorphism classes is injective")
    found = []
    for total in range(max_total + 1):
        for n in range(total + 1):
            res.cases += 1
            count, distinct, injective = welsh_check(n, total - n)
            if not injective:
                res.fail(f"(n,m)=({n},{total - n}): {distinct} distinct of {count}")
            if 0 < n <= total - n:
                found.append(f"({n},{total - n}):{distinct}/{count}")
    res.note = " ".join(found)
    return res


def _brute_isomorphic(M: Matroid, N: Matroid) -> bool:
    if (M.n, M.rank, len(M.bases)) != (N.n, N.rank, len(N.bases)):
        return False
    target = {frozenset(elements(b)) for b in N.bases}
    sources = [elements(b) for b in M.bases]
    for p in permutations(range(M.n)):
        if all(frozenset(p[e] for e in b) in target for b in sources):
            return True
    return False


def _invariant(M: Matroid) -> tuple:
    degrees = sorted(sum(b >> e & 1 for b in M.bases) for e in range(M.n))
    return (M.rank, len(M.bases), tuple(degrees))


def dedup_without_keys(matroids: list[Matroid]) -> list[Matroid]:
    """Isomorphism classes by invariant buckets and brute-force relabelling,
    without using canonical keys."""
    buckets: dict[tuple, list[Matroid]] = {}
    for M in matroids:
        reps = buckets.setdefault(_invariant(M), [])
        if not any(_brute_isomorphic(M, R) for R in reps):
            reps.append(M)
    return [R for reps in buckets.values() for R in reps]


def check_enumeration(max_n: int = 6) -> CheckResult:
    res = CheckResult("enumeration agrees with independent strategies")
    counts = []
    for n in range(max_n + 1):
        res.cases += 1
        catalog = enumerate_matroids(n)
        counts.append(str(len(catalog)))
        if n <= ORACLE_MAX_N:
            other = enumerate_matroids_by_independents(n)
            if other.keys() != catalog.keys():
                res.fail(f"n={n}: independent-set oracle disagrees")
        labelled = [M for r in range(n + 1) for M in labelled_matroids(n, r)]
        if len(dedup_without_keys(labelled)) != len(catalog):
            res.fail(f"n={n}: brute-force dedup disagrees")
        if {canonical_key(dual(M)) for M in catalog} != catalog.keys():
            res.fail(f"n={n}: catalog not closed under duality")
    res.note = "counts=" + ",".join(counts)
    return res


def check_example() -> CheckResult:
    """Three-point line times two double points: 25 bases in three patterns."""
    res = CheckResult("worked example: line times two double points")
    L = free_product(uniform(2, 3), TWO_DOUBLE_POINTS)
    res.cases = 1
    S = full(3)
    double_points = {0b0011 << 3, 0b1100 << 3}
    expected = set()
    for b in range(1 << 7):
        a, t = popcount(b & S), b & ~S
        if (a == 0 and t == 0b1111 << 3) or (a == 1 and popcount(t) == 3) or (
            a == 2 and popcount(t) == 2 and t not in double_points
        ):
            expected.add(b)
    if len(L.bases) != 25 or set(L.bases) != expected:
        res.fail(f"{len(L.bases)} bases, pattern match {set(L.bases) == expected}")
    return res


def check_weak_order(max_n: int = 6) -> CheckResult:
    """For every split of every catalog matroid, M□N maps weakly onto L and L onto M⊕N.

    Empirical only: the ordering claim is stated without proof.
    """
    res = CheckResult("free product first, direct sum last in weak order (empirical)")
    for size in range(max_n + 1):
        for L in factor_family(size):
            splits = set()
            for A in range(1 << size):
                splits.add((canonical_form(restrict(L, A)), canonical_form(contract(L, A))))
            for M, N in sorted(splits, key=lambda p: (p[0].n, p[0].bases, p[1].bases)):
                res.cases += 1
                if find_weak_map(free_product(M, N), L) is None:
                    res.fail(f"L={L} {_pair(M, N)}: no weak map from the free product")
                elif find_weak_map(L, direct_sum(M, N)) is None:
                    res.fail(f"L={L} {_pair(M, N)}: no weak map onto the direct sum")
    return res


# (check, default bound); None means the check has no size bound.
SUITES: list[tuple[Callable[..., CheckResult], int | None]] = [
    (check_example, None),
    (check_validity, 8),
    (check_characterizations, 8),
    (check_rank_and_units, 8),
    (check_minors, 7),
    (check_duality, 7),
    (check_rank_bounds, 7),
    (check_theorem, 7),
    (check_unique_factorization, 6),
    (check_enumeration, 6),
    (check_welsh, 6),
    (check_weak_order, 6),
]


def run_all(scale: int | None = None, report: Callable[[CheckResult], None] | None = None
            ) -> list[CheckResult]:
    results = []
    for check, bound in SUITES:
        if bound is None:
            res = check()
        else:
            res = check(bound if scale is None else min(bound, scale))
        if report is not None:
            report(res)
        results.append(res)
    return results
