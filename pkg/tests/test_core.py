import random
from itertools import product

import pytest
from hypothesis import given

from matroidlab import core, masks
from matroidlab.core import (
    EmptyFamily,
    ExchangeViolation,
    LiteralError,
    Matroid,
    UnequalCardinality,
    contract,
    contract_through,
    direct_sum,
    dual,
    from_bases,
    is_independent,
    isthmuses,
    loops,
    nullity,
    parse_literal,
    rank,
    rank_lack,
    relabel,
    restrict,
    spans,
    uniform,
)
from matroidlab.masks import from_elements as S

from conftest import brute_rank, catalog_upto, relabelled

LOOP = parse_literal("1:e")
ISTHMUS = parse_literal("1:0")
EMPTY = parse_literal("0:e")


def test_from_bases_examples():
    M = from_bases(3, [0b011, 0b101, 0b110])
    assert M == uniform(2, 3) and M.rank == 2
    assert from_bases(1, [0]).rank == 0
    with pytest.raises(UnequalCardinality):
        from_bases(2, [0b01, 0b10, 0b11])


def test_from_bases_normalises_order_and_duplicates():
    assert from_bases(3, [0b110, 0b011, 0b101, 0b011]).bases == (0b011, 0b101, 0b110)


def test_from_bases_rejections():
    with pytest.raises(EmptyFamily):
        from_bases(2, [])
    with pytest.raises(ExchangeViolation) as info:
        # {0,1} and {2,3}: removing 0 from {0,1} cannot be repaired
        from_bases(4, [S([0, 1]), S([2, 3])])
    assert info.value.b1 == S([0, 1]) and info.value.x == 0
    with pytest.raises(core.MatroidError):
        from_bases(2, [0b100])
    with pytest.raises(core.MatroidError):
        from_bases(masks.MAX_N + 1, [0])


def test_rank_examples(double_points, line):
    assert rank(line, 0b111) == 2
    assert rank(LOOP, 0b1) == 0
    assert rank(double_points, S([0, 1, 2])) == brute_rank(double_points, S([0, 1, 2])) == 2


def test_nullity_and_rank_lack(double_points, line):
    assert nullity(line, 0) == 0
    assert nullity(double_points, S([0, 1])) == 1
    assert all(nullity(uniform(3, 3), A) == 0 for A in range(8))
    assert rank_lack(double_points, double_points.ground) == 0
    assert rank_lack(line, 0) == 2
    assert rank_lack(double_points, S([0])) == 1


def test_independence_and_spanning(double_points, line):
    assert is_independent(line, 0)
    assert not is_independent(LOOP, 1)
    assert is_independent(double_points, S([0, 2]))
    assert spans(line, line.ground)
    assert not spans(line, S([0]))
    assert spans(double_points, S([0, 2]))


def test_width_mismatch(line):
    for op in (rank, nullity, rank_lack, is_independent, spans, restrict, contract):
        with pytest.raises(ValueError):
            op(line, 0b1000)


def test_restrict_examples(double_points, line):
    assert restrict(line, line.ground) == line
    assert restrict(line, S([0, 1])) == uniform(2, 2)
    assert restrict(double_points, S([0, 1])) == uniform(1, 2)


def test_contract_examples(line):
    assert contract(line, 0) == line
    assert contract(line, S([0])) == uniform(1, 2)
    assert contract(uniform(3, 3), S([0, 1])) == uniform(1, 1)


def test_contract_reindexes_surviving_elements():
    # loop 0, isthmus 1, double point {2,3}; contracting {1} leaves loop + double point
    M = parse_literal("4:1,2;1,3")
    assert contract(M, S([1])) == parse_literal("3:1;2")
    assert restrict(M, S([1, 3])) == parse_literal("2:0,1")


def test_dual_examples(line):
    assert dual(line) == uniform(1, 3)
    assert dual(LOOP) == ISTHMUS


def test_direct_sum_examples(line):
    assert direct_sum(line, EMPTY) == line
    assert direct_sum(ISTHMUS, LOOP) == parse_literal("2:0")
    assert len(direct_sum(line, uniform(1, 2)).bases) == 3 * 2


def test_loops_and_isthmuses(line):
    assert loops(uniform(4, 4)) == 0 and isthmuses(uniform(4, 4)) == 0b1111
    assert loops(LOOP) == 1
    assert isthmuses(line) == 0


def test_named_constructors():
    assert len(uniform(2, 3).bases) == 3
    assert core.zero(2).bases == (0,)
    assert core.free(0) == EMPTY
    with pytest.raises(core.MatroidError):
        uniform(3, 2)


# -- literals ---------------------------------------------------------------

@pytest.mark.parametrize("text", ["3:0,1;0,2;1,2", "1:e", "0:e", "4:0,2;1,2;0,3;1,3", "2:0"])
def test_literal_round_trip(text):
    assert str(parse_literal(text)) == text


def test_literal_bases_print_in_mask_order():
    assert str(parse_literal("4:0,2;0,3;1,2;1,3")) == "4:0,2;1,2;0,3;1,3"


@pytest.mark.parametrize("text", [
    "3:0,1;0,3",    # out of range
    "3:1,0",        # unsorted
    "3:0,0",        # duplicate index
    "3:0;0",        # duplicate basis
    "3: 0,1",       # whitespace
    "3:",           # no bases
    "x:0",
    "3:01",
    "0,1",
])
def test_literal_rejections(text):
    with pytest.raises(LiteralError):
        parse_literal(text)


def test_literal_with_invalid_family_raises_matroid_error():
    with pytest.raises(core.MatroidError):
        parse_literal("2:0;0,1")


def test_subset_literal():
    assert core.parse_subset("e", 3) == 0
    assert core.parse_subset("0,2", 3) == 0b101
    with pytest.raises(LiteralError):
        core.parse_subset("3", 3)


# -- exhaustive properties on the catalogs ----------------------------------

SMALL = catalog_upto(5)
TINY = catalog_upto(4)


@pytest.mark.parametrize("M", SMALL, ids=str)
def test_rank_is_monotone_submodular_and_matches_brute_force(M):
    ranks = [rank(M, A) for A in range(1 << M.n)]
    for A in range(1 << M.n):
        assert ranks[A] == brute_rank(M, A)
        for e in range(M.n):
            assert ranks[A] <= ranks[A | 1 << e]
    for A, B in product(range(1 << M.n), repeat=2):
        assert ranks[A | B] + ranks[A & B] <= ranks[A] + ranks[B]


@pytest.mark.parametrize("M", SMALL, ids=str)
def test_dual_rank_identity(M):
    D = dual(M)
    assert dual(D) == M
    for A in range(1 << M.n):
        B = M.ground & ~A
        assert rank_lack(M, A) == nullity(D, B)
        assert rank(D, B) == masks.popcount(B) - M.rank + rank(M, A)
    assert isthmuses(M) == loops(D)


@pytest.mark.parametrize("M", SMALL, ids=str)
def test_minors_are_valid_matroids(M):
    for A in range(1 << M.n):
        R, C = restrict(M, A), contract(M, A)
        assert R.n == masks.popcount(A) and C.n == M.n - R.n
        assert R.rank == rank(M, A)
        assert R.rank + C.rank == M.rank


@pytest.mark.parametrize("M", TINY, ids=str)
def test_contract_independent_of_chosen_basis(M):
    for A in range(1 << M.n):
        r = rank(M, A)
        choices = {b & A for b in M.bases if masks.popcount(b & A) == r}
        results = {contract_through(M, A, E) for E in choices}
        assert results == {contract(M, A)}
        # classical description: bases of M/A are B \ A for B meeting A maximally
        rest = M.ground & ~A
        classical = Matroid(masks.popcount(rest), tuple(
            masks.compress(b, rest) for b in M.bases if masks.popcount(b & A) == r))
        assert contract(M, A) == classical


def test_direct_sum_associative_and_dual_compatible():
    summands = catalog_upto(4)
    for M in summands:
        for N in summands:
            assert dual(direct_sum(M, N)) == direct_sum(dual(M), dual(N))
            for P in catalog_upto(2):
                assert direct_sum(direct_sum(M, N), P) == direct_sum(M, direct_sum(N, P))


@given(relabelled(5))
def test_invariants_survive_relabelling(M):
    assert dual(dual(M)) == M
    assert isthmuses(M) == loops(dual(M))
    assert all(is_independent(M, A) == (rank(M, A) == masks.popcount(A))
               for A in range(1 << M.n))


def test_relabel_rejects_non_permutation(line):
    with pytest.raises(ValueError):
        relabel(line, (0, 0, 1))


def test_vectorised_exchange_check_matches_plain_loop(monkeypatch):
    rng = random.Random(11)
    triples = masks.k_subsets(9, 3)
    families = [rng.sample(triples, 60) for _ in range(20)]
    families.append(triples[:-1])  # still a matroid: one 3-point line
    outcomes = []
    for threshold in (10**6, 0):
        monkeypatch.setattr(core, "_VECTOR_MIN", threshold)
        result = []
        for family in families:
            try:
                Matroid(9, tuple(family))
                result.append(None)
            except ExchangeViolation as exc:
                result.append((exc.b1, exc.b2, exc.x))
        outcomes.append(result)
    assert outcomes[0] == outcomes[1]
    assert outcomes[0][-1] is None and all(outcomes[0][:-1])
