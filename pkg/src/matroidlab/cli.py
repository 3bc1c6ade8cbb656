"""Command-line front end: ``python -m matroidlab <verb> ...``.

Matroid operands are literals (``3:0,1;0,2;1,2``) or the shorthands
``uniform:k,n``, ``free:n``, ``zero:n``; operands joined by ``+`` are combined
by direct sum.  Exit status: 0 success/true, 1 predicate false, 2 usage
error, 3 invalid matroid input.
"""
from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence

from . import core
from .core import LiteralError, Matroid, MatroidError
from .enumeration import enumerate_matroids, format_catalog, welsh_check
from .iso import format_bijection, is_isomorphic, parse_bijection
from .masks import format_subset
from .product import NotAFreeProduct, count_factorizations, free_product, recover_factors
from .verify import run_all
from .weakmaps import find_weak_map, is_weak_map

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3

log = logging.getLogger("matroidlab")


class InputError(Exception):
    pass


def _count(text: str) -> int:
    if not text.isdigit():
        raise InputError(f"expected a non-negative integer, got {text!r}")
    return int(text)


def _single(text: str) -> Matroid:
    kind, sep, args = text.partition(":")
    if sep and kind in ("uniform", "free", "zero"):
        parts = [_count(a) for a in args.split(",")]
        if kind == "uniform" and len(parts) == 2:
            return core.uniform(*parts)
        if kind != "uniform" and len(parts) == 1:
            return core.free(parts[0]) if kind == "free" else core.zero(parts[0])
        raise InputError(f"bad constructor {text!r}")
    return core.parse_literal(text)


def parse_matroid(text: str) -> Matroid:
    """One CLI operand; ``A+B`` is the direct sum of ``A`` and ``B``."""
    pieces = text.split("+")
    M = _single(pieces[0])
    for piece in pieces[1:]:
        M = core.direct_sum(M, _single(piece))
    return M


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="PATH", help="write results to PATH instead of stdout")
    common.add_argument("--workers", type=int, default=1, metavar="K")
    common.add_argument("--scale", type=int, default=None, metavar="NMAX",
                        help="size bound for verify (default: acceptance scales)")
    common.add_argument("--quiet", action="store_true")

    parser = argparse.ArgumentParser(prog="matroidlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, help_, *args):
        p = sub.add_parser(name, help=help_, parents=[common])
        for arg in args:
            if isinstance(arg, tuple):
                p.add_argument(arg[0], nargs=arg[1])
            else:
                p.add_argument(arg)
        return p

    verb("parse", "validate and normalise a matroid", "matroid")
    verb("rank", "rank, nullity and rank-lack of a subset", "matroid", "subset")
    verb("dual", "dual matroid", "matroid")
    verb("restrict", "restriction to a subset", "matroid", "subset")
    verb("contract", "contraction of a subset", "matroid", "subset")
    verb("dsum", "direct sum", ("matroids", "+"))
    verb("freeprod", "free product of two matroids", "left", "right")
    verb("iso", "isomorphism test", "left", "right")
    wm = verb("weakmap", "find or check a weak map P -> Q", "source", "target")
    wm.add_argument("--map", dest="bijection", help="check this bijection instead of searching")
    verb("recover", "recover free-product factors", "matroid", "k")
    verb("factcount", "count subsets A with L|A = M and L/A = N", "product", "left", "right")
    verb("enumerate", "catalog of matroids on n elements", "n")
    verb("welsh", "injectivity of the free product on isomorphism classes", "n", "m")
    verb("verify", "run the structural checks")
    return parser


def _run(args: argparse.Namespace, emit) -> int:
    v = args.verb
    if v == "parse":
        M = parse_matroid(args.matroid)
        emit(str(M))
        emit(f"n={M.n} rank={M.rank} bases={len(M.bases)}")
        return EXIT_OK
    if v == "rank":
        M = parse_matroid(args.matroid)
        A = core.parse_subset(args.subset, M.n)
        emit(f"rank={core.rank(M, A)} nullity={core.nullity(M, A)} "
             f"rank_lack={core.rank_lack(M, A)}")
        return EXIT_OK
    if v == "dual":
        emit(str(core.dual(parse_matroid(args.matroid))))
        return EXIT_OK
    if v in ("restrict", "contract"):
        M = parse_matroid(args.matroid)
        A = core.parse_subset(args.subset, M.n)
        op = core.restrict if v == "restrict" else core.contract
        emit(str(op(M, A)))
        return EXIT_OK
    if v == "dsum":
        parts = [parse_matroid(t) for t in args.matroids]
        M = parts[0]
        for N in parts[1:]:
            M = core.direct_sum(M, N)
        emit(str(M))
        return EXIT_OK
    if v == "freeprod":
        M, N = parse_matroid(args.left), parse_matroid(args.right)
        emit(str(free_product(M, N)))
        return EXIT_OK
    if v == "iso":
        M, N = parse_matroid(args.left), parse_matroid(args.right)
        phi = is_isomorphic(M, N)
        if phi is None:
            emit("not isomorphic")
            return EXIT_FALSE
        emit(format_bijection(phi))
        return EXIT_OK
    if v == "weakmap":
        P, Q = parse_matroid(args.source), parse_matroid(args.target)
        if P.n != Q.n:
            raise InputError(f"ground sets differ in size: {P.n} vs {Q.n}")
        if args.bijection is not None:
            try:
                phi = parse_bijection(args.bijection, P.n)
            except ValueError as exc:
                raise InputError(str(exc)) from None
            weak = is_weak_map(P, Q, phi)
            emit("weak" if weak else "not weak")
            return EXIT_OK if weak else EXIT_FALSE
        phi = find_weak_map(P, Q)
        if phi is None:
            emit("no weak map")
            return EXIT_FALSE
        emit(format_bijection(phi))
        return EXIT_OK
    if v == "recover":
        L, k = parse_matroid(args.matroid), _count(args.k)
        if k > L.n:
            raise InputError(f"k={k} exceeds ground set size {L.n}")
        try:
            split = recover_factors(L, k)
        except NotAFreeProduct as exc:
            emit(str(exc))
            return EXIT_FALSE
        emit(str(split.left))
        emit(str(split.right))
        emit(f"witness={format_subset(split.witness)}")
        return EXIT_OK
    if v == "factcount":
        L, M, N = (parse_matroid(t) for t in (args.product, args.left, args.right))
        if L.n != M.n + N.n:
            raise InputError(f"ground set sizes {L.n} != {M.n} + {N.n}")
        emit(str(count_factorizations(L, M, N)))
        return EXIT_OK
    if v == "enumerate":
        catalog = enumerate_matroids(_count(args.n), workers=args.workers)
        emit(format_catalog(catalog).rstrip("\n"))
        return EXIT_OK
    if v == "welsh":
        count, distinct, injective = welsh_check(_count(args.n), _count(args.m),
                                                 workers=args.workers)
        emit(f"products={count} distinct={distinct} injective={'yes' if injective else 'no'}")
        return EXIT_OK if injective else EXIT_FALSE
    if v == "verify":
        results = run_all(args.scale, report=None if args.quiet else (lambda r: emit(r.line())))
        passed = sum(r.ok for r in results)
        emit(f"{passed}/{len(results)} checks passed")
        return EXIT_OK if passed == len(results) else EXIT_FALSE
    raise AssertionError(v)


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    lines: list[str] = []
    try:
        status = _run(args, lines.append)
    except (LiteralError, MatroidError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = "\n".join(lines) + "\n" if lines else ""
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
