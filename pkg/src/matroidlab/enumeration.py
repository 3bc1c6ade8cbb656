"""Exhaustive generation of small matroids up to isomorphism, and catalog files.

Generation works one rank at a time.  The ``r``-subsets of ``{0..n-1}`` are
decided in ascending mask order (basis or not), with the first one,
``{0..r-1}``, forced in; every matroid has a relabelling with that basis.  A
branch dies as soon as some exchange requirement ``(B1, B2, x)`` has lost all
of its candidates ``B1 - x + y``.  Labelled results are merged by canonical key.
"""
from __future__ import annotations

import logging
from collections.abc import Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from .core import LiteralError, Matroid, format_literal, parse_literal
from .iso import IsoKey, canonical_form, canonical_key
from .masks import full, iter_bits, k_subsets, popcount
from .product import free_product

log = logging.getLogger(__name__)

# Largest n accepted by enumerate_matroids; 7 is best effort.
ENUM_MAX_N = 7
ORACLE_MAX_N = 4


class CatalogError(ValueError):
    pass


def _sort_key(M: Matroid):
    return (M.rank, len(M.bases), M.bases)


@dataclass(frozen=True)
class Catalog:
    """Pairwise non-isomorphic matroids on ``n`` elements, in canonical form and order."""

    n: int
    classes: tuple[Matroid, ...]

    def __post_init__(self):
        canon = []
        seen: dict[IsoKey, Matroid] = {}
        for M in self.classes:
            if M.n != self.n:
                raise CatalogError(f"entry {M} does not have {self.n} elements")
            key = canonical_key(M)
            if key in seen:
                raise CatalogError(f"entries {seen[key]} and {M} are isomorphic")
            seen[key] = M
            canon.append(canonical_form(M))
        object.__setattr__(self, "classes", tuple(sorted(canon, key=_sort_key)))

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self) -> Iterator[Matroid]:
        return iter(self.classes)

    def keys(self) -> set[IsoKey]:
        return {canonical_key(M) for M in self.classes}


def _exchange_table(n: int, r: int):
    subs = k_subsets(n, r)
    pos = {s: i for i, s in enumerate(subs)}
    outside = full(n)
    # swap[i][(x, y)] = index of subs[i] - x + y
    swap = []
    for s in subs:
        row = {}
        for xb in iter_bits(s):
            for yb in iter_bits(outside & ~s):
                row[xb, yb] = pos[s ^ xb | yb]
        swap.append(row)
    return subs, swap


def _labelled_families(n: int, r: int, prefix: tuple[bool, ...] = ()) -> Iterator[tuple[int, ...]]:
    """Basis families of rank ``r`` containing ``{0..r-1}``; ``prefix`` fixes the
    decisions for the subsets right after the forced one."""
    subs, swap = _exchange_table(n, r)
    total = len(subs)
    status = [-1] * total  # -1 undecided, 0 excluded, 1 basis
    chosen: list[int] = []

    def alive(i1: int, b2: int, xb: int) -> bool:
        b1 = subs[i1]
        row = swap[i1]
        for yb in iter_bits(b2 & ~b1):
            if status[row[xb, yb]]:
                return True
        return False

    def include_ok(t: int) -> bool:
        b = subs[t]
        for i2 in chosen:
            b2 = subs[i2]
            if i2 == t:
                continue
            for xb in iter_bits(b & ~b2):
                if not alive(t, b2, xb):
                    return False
            for xb in iter_bits(b2 & ~b):
                if not alive(i2, b, xb):
                    return False
        return True

    def exclude_ok(t: int) -> bool:
        x_set = subs[t]
        for i1 in chosen:
            b1 = subs[i1]
            if popcount(b1 ^ x_set) != 2:
                continue
            xb, yb = b1 & ~x_set, x_set & ~b1
            for i2 in chosen:
                b2 = subs[i2]
                if b2 & yb and not b2 & xb and not alive(i1, b2, xb):
                    return False
        return True

    def decide(t: int, choice: bool) -> bool:
        status[t] = 1 if choice else 0
        if choice:
            chosen.append(t)
            if include_ok(t):
                return True
            chosen.pop()
        elif exclude_ok(t):
            return True
        status[t] = -1
        return False

    def undo(t: int) -> None:
        if status[t] == 1:
            chosen.pop()
        status[t] = -1

    def search(t: int) -> Iterator[tuple[int, ...]]:
        if t == total:
            yield tuple(subs[i] for i in chosen)
            return
        choices = (prefix[t - 1],) if t - 1 < len(prefix) else (False, True)
        for choice in choices:
            if decide(t, choice):
                yield from search(t + 1)
                undo(t)

    status[0] = 1
    chosen.append(0)
    yield from search(1)


def labelled_matroids(n: int, r: int) -> Iterator[Matroid]:
    """Every rank-``r`` matroid on ``n`` elements having ``{0..r-1}`` as a basis."""
    for family in _labelled_families(n, r):
        yield Matroid(n, family)


def _classes_for_task(task: tuple[int, int, tuple[bool, ...]]) -> dict[IsoKey, Matroid]:
    n, r, prefix = task
    found: dict[IsoKey, Matroid] = {}
    for family in _labelled_families(n, r, prefix):
        M = Matroid(n, family)
        key = canonical_key(M)
        if key not in found:
            found[key] = Matroid(n, key.canonical_bases)
    return found


def _tasks(n: int, depth: int) -> list[tuple[int, int, tuple[bool, ...]]]:
    tasks = []
    for r in range(n + 1):
        width = min(depth, len(k_subsets(n, r)) - 1)
        for code in range(1 << width):
            tasks.append((n, r, tuple(bool(code >> i & 1) for i in range(width))))
    return tasks


def enumerate_matroids(n: int, workers: int = 1) -> Catalog:
    """All matroids on ``n`` elements up to isomorphism."""
    if not 0 <= n <= ENUM_MAX_N:
        raise ValueError(f"enumeration is capped at n <= {ENUM_MAX_N}, got {n}")
    if workers <= 1:
        return _enumerate_cached(n)
    merged: dict[IsoKey, Matroid] = {}
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_classes_for_task, _tasks(n, depth=4)):
            merged.update(part)
    return Catalog(n, tuple(merged.values()))


@lru_cache(maxsize=None)
def _enumerate_cached(n: int) -> Catalog:
    merged: dict[IsoKey, Matroid] = {}
    for r in range(n + 1):
        merged.update(_classes_for_task((n, r, ())))
    log.info("n=%d: %d isomorphism classes", n, len(merged))
    return Catalog(n, tuple(merged.values()))


def labelled_matroids_by_independents(n: int) -> list[Matroid]:
    """Every matroid on ``n <= 4`` labelled elements, found by testing each family
    of subsets against the independence axioms.  Independent of the
    backtracking generator; used to cross-check it."""
    if n > ORACLE_MAX_N:
        raise ValueError(f"the independent-set oracle is limited to n <= {ORACLE_MAX_N}")
    universe = 1 << n
    out = []
    for code in range(1 << universe):
        if not code & 1:
            continue  # the empty set must be independent
        family = [A for A in range(universe) if code >> A & 1]
        if any(not code >> (A & ~(1 << e)) & 1 for A in family for e in range(n) if A >> e & 1):
            continue
        if all(
            any(code >> (I | 1 << e) & 1 for e in range(n) if J >> e & 1 and not I >> e & 1)
            for I in family for J in family if popcount(I) < popcount(J)
        ):
            top = max(popcount(A) for A in family)
            out.append(Matroid(n, tuple(A for A in family if popcount(A) == top)))
    return out


def enumerate_matroids_by_independents(n: int) -> Catalog:
    classes: dict[IsoKey, Matroid] = {}
    for M in labelled_matroids_by_independents(n):
        classes.setdefault(canonical_key(M), M)
    return Catalog(n, tuple(classes.values()))


def welsh_check(
    n: int, m: int, catalogs: dict[int, Catalog] | None = None, workers: int = 1
) -> tuple[int, int, bool]:
    """Free products of all catalog pairs on ``n`` and ``m`` elements.

    Returns ``(products, distinct keys, distinct == products)``; ``True`` means
    the product map on isomorphism classes is injective, so ``f(n+m) >= f(n) f(m)``.
    """
    cats = []
    for size in (n, m):
        if catalogs is not None:
            if size not in catalogs:
                raise CatalogError(f"no catalog for n={size}")
            cats.append(catalogs[size])
        else:
            cats.append(enumerate_matroids(size, workers=workers))
    left, right = cats
    keys = {canonical_key(free_product(M, N)) for M in left for N in right}
    count = len(left) * len(right)
    return count, len(keys), len(keys) == count


# -- catalog files ----------------------------------------------------------

def format_catalog(c: Catalog) -> str:
    lines = [f"catalog n={c.n} count={len(c)}"]
    lines.extend(format_literal(M) for M in c.classes)
    return "\n".join(lines) + "\n"


def parse_catalog(text: str) -> Catalog:
    header = None
    entries: list[tuple[int, Matroid]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("catalog"):
            if header is not None or entries:
                raise CatalogError(f"line {lineno}: unexpected header")
            try:
                fields = dict(part.split("=", 1) for part in line.split()[1:])
                header = (int(fields["n"]), int(fields["count"]))
            except (KeyError, ValueError):
                raise CatalogError(f"line {lineno}: malformed header {line!r}") from None
            continue
        try:
            entries.append((lineno, parse_literal(line)))
        except (LiteralError, ValueError) as exc:
            raise CatalogError(f"line {lineno}: {exc}") from None
    if header is None:
        if not entries:
            raise CatalogError("empty catalog file without header")
        header = (entries[0][1].n, len(entries))
    n, count = header
    for lineno, M in entries:
        if M.n != n:
            raise CatalogError(f"line {lineno}: entry has {M.n} elements, header says {n}")
    if len(entries) != count:
        raise CatalogError(f"header announces {count} entries, found {len(entries)}")
    return Catalog(n, tuple(M for _, M in entries))


def save_catalog(c: Catalog, path: str | Path) -> None:
    Path(path).write_text(format_catalog(c), encoding="utf-8")


def load_catalog(path: str | Path) -> Catalog:
    return parse_catalog(Path(path).read_text(encoding="utf-8"))
