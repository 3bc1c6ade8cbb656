from math import factorial
from itertools import permutations

import pytest

from matroidlab.core import dual, parse_literal, relabel, uniform
from matroidlab.enumeration import (
    Catalog,
    CatalogError,
    enumerate_matroids,
    enumerate_matroids_by_independents,
    format_catalog,
    labelled_matroids,
    labelled_matroids_by_independents,
    load_catalog,
    parse_catalog,
    save_catalog,
    welsh_check,
)
from matroidlab.iso import canonical_key
from matroidlab.product import free_product
from matroidlab.verify import dedup_without_keys

from conftest import brute_isomorphic


def test_small_counts():
    assert len(enumerate_matroids(0)) == 1
    assert len(enumerate_matroids(3)) == 8


@pytest.mark.parametrize("n", range(5))
def test_backtracking_matches_independent_set_oracle(n):
    oracle = labelled_matroids_by_independents(n)
    # dedup the oracle output by brute-force relabelling only
    classes = []
    for M in oracle:
        if not any(brute_isomorphic(M, R) for R in classes):
            classes.append(M)
    catalog = enumerate_matroids(n)
    assert len(classes) == len(catalog)
    assert {canonical_key(M) for M in classes} == catalog.keys()
    assert enumerate_matroids_by_independents(n).keys() == catalog.keys()


@pytest.mark.parametrize("n", range(5))
def test_orbit_counts_match_labelled_total(n):
    """Sum of n!/|Aut(M)| over classes equals the number of labelled matroids."""
    total = 0
    for M in enumerate_matroids(n):
        automorphisms = sum(relabel(M, p) == M for p in permutations(range(n)))
        total += factorial(n) // automorphisms
    assert total == len(labelled_matroids_by_independents(n))


@pytest.mark.parametrize("n", [5, 6])
def test_independent_dedup_pass(n):
    labelled = [M for r in range(n + 1) for M in labelled_matroids(n, r)]
    assert len(dedup_without_keys(labelled)) == len(enumerate_matroids(n))


def test_labelled_families_contain_the_first_basis():
    for r in range(5):
        for M in labelled_matroids(4, r):
            assert (1 << r) - 1 in M.bases


@pytest.mark.parametrize("n", range(7))
def test_catalog_is_closed_under_duality(n):
    catalog = enumerate_matroids(n)
    assert {canonical_key(dual(M)) for M in catalog} == catalog.keys()


def test_catalog_sorted_and_canonical():
    catalog = enumerate_matroids(4)
    order = [(M.rank, len(M.bases), M.bases) for M in catalog]
    assert order == sorted(order)
    assert all(canonical_key(M).canonical_bases == M.bases for M in catalog)


def test_catalog_rejects_duplicates_and_wrong_sizes():
    with pytest.raises(CatalogError):
        Catalog(2, (uniform(1, 2), parse_literal("2:0;1")))
    with pytest.raises(CatalogError):
        Catalog(2, (uniform(1, 3),))


def test_enumeration_cap():
    with pytest.raises(ValueError):
        enumerate_matroids(8)


def test_parallel_enumeration_is_identical():
    assert format_catalog(enumerate_matroids(5, workers=2)) == format_catalog(enumerate_matroids(5))


def test_welsh_examples():
    assert welsh_check(1, 1) == (4, 4, True)
    assert welsh_check(2, 2) == (16, 16, True)
    assert welsh_check(3, 3) == (64, 64, True)


def test_welsh_with_explicit_catalogs():
    cats = {2: enumerate_matroids(2)}
    assert welsh_check(2, 2, catalogs=cats) == (16, 16, True)
    with pytest.raises(CatalogError):
        welsh_check(2, 3, catalogs=cats)


@pytest.mark.parametrize("total", range(7))
def test_products_land_in_the_catalog(total):
    target = enumerate_matroids(total).keys()
    for n in range(total + 1):
        for M in enumerate_matroids(n):
            for N in enumerate_matroids(total - n):
                assert canonical_key(free_product(M, N)) in target


# -- catalog files ----------------------------------------------------------

def test_catalog_round_trip(tmp_path):
    path = tmp_path / "n3.txt"
    catalog = enumerate_matroids(3)
    save_catalog(catalog, path)
    text = path.read_text()
    assert text.splitlines()[0] == "catalog n=3 count=8"
    again = load_catalog(path)
    assert again == catalog
    save_catalog(again, tmp_path / "again.txt")
    assert (tmp_path / "again.txt").read_bytes() == path.read_bytes()


def test_catalog_singleton_and_comments():
    assert len(parse_catalog("3:0,1;0,2;1,2\n")) == 1
    catalog = parse_catalog("# hand written\ncatalog n=3 count=1\n3:0,1;0,2;1,2\n")
    assert catalog.classes == (uniform(2, 3),)


@pytest.mark.parametrize("text, line", [
    ("catalog n=2 count=2\n2:0\n2:1\n", None),          # isomorphic entries
    ("catalog n=2 count=1\n2:0\n2:0;1\n", None),        # count mismatch
    ("catalog n=2 count=1\n2:0;0\n", 2),                # duplicate basis
    ("catalog n=2 count=1\n# c\n3:0\n", 3),             # wrong size
    ("catalog n=2 count=1\n2:0\ncatalog n=2 count=1\n", 3),
    ("catalog n=two\n", 1),
])
def test_catalog_parse_errors(text, line):
    with pytest.raises(CatalogError) as info:
        parse_catalog(text)
    if line is not None:
        assert f"line {line}" in str(info.value)
