"""Command line interface: ``tropglue count|evaluate|render|check``.

Exit codes: 0 success, 1 verification mismatch, 2 input error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import checks
from .complex import Domain
from .enumeration import _short, count_nd, generic_config, kontsevich
from .errors import GenericityError, TropGlueError
from .glue import evaluate_curve, vanishing_edges
from .io import CurveDoc, dump_curves, load_curves, load_table
from .render import render_svg
from .tropical import aut_order

OK, MISMATCH, INPUT_ERROR = 0, 1, 2
SEED_RETRIES = 5


def _positive(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def cmd_count(args) -> int:
    d = args.degree
    curves, seed, errors = None, args.seed, []
    for attempt in range(SEED_RETRIES):
        s = args.seed + attempt
        curves = []
        try:
            n = count_nd(d, s, threads=args.threads, curves_out=curves)
        except GenericityError as exc:
            errors.append(f"seed {s}: {exc}")
            continue
        seed = s
        break
    else:
        print(f"error: no generic configuration after {SEED_RETRIES} seeds", file=sys.stderr)
        for line in errors:
            print(f"  {line}", file=sys.stderr)
        return MISMATCH
    for line in errors:
        print(f"note: skipped non-generic {line}")
    config = generic_config(3 * d - 1, seed)
    print(f"degree {d}, {3 * d - 1} points, seed {seed}")
    for i, p in config.points:
        print(f"  p{i} = {p}")
    print(f"{'curve':<14}{'mult':>6}{'aut':>5}")
    for c in curves:
        print(f"{_short(c.canonical):<14}{c.multiplicity:>6}{aut_order(c.type):>5}")
    print(f"count: {n}")
    if args.save:
        docs = [CurveDoc(_short(c.canonical), c.type, config, Domain.plane()) for c in curves]
        dump_curves(docs, args.save)
    if args.oracle:
        k = kontsevich(d)
        print(f"kontsevich({d}): {k}")
        if k != n:
            print("MISMATCH", file=sys.stderr)
            return MISMATCH
        print("match")
    return OK


def cmd_evaluate(args) -> int:
    docs = load_curves(args.curves)
    table = load_table(args.table) if args.table else None
    total = None
    for k, doc in enumerate(docs):
        name = doc.name or f"curve {k}"
        dead = vanishing_edges(doc.type)
        if dead:
            print(f"note: {name}: internal edge(s) {', '.join(dead)} have derivative (0,0); "
                  "contribution vanishes")
        val = evaluate_curve(doc.gluing_config(table), root=args.root)
        aut = aut_order(doc.type)
        print(f"{name}: {val}" + (f"  (|Aut| = {aut})" if aut != 1 else ""))
        term = val / aut
        total = term if total is None else total + term
    print(f"total: {total}")
    return OK


def cmd_render(args) -> int:
    docs = load_curves(args.curve)
    if not 0 <= args.index < len(docs):
        raise TropGlueError(f"curve index {args.index} out of range (file has {len(docs)})")
    doc = docs[args.index]
    svg = render_svg(doc.type, doc.domain, doc.points.as_dict())
    Path(args.out).write_text(svg)
    print(f"wrote {args.out}")
    return OK


def cmd_check(args) -> int:
    results = checks.run_all(table_path=args.table, seeds=range(args.seeds))
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return MISMATCH if failed else OK


def build_parser():
    ap = argparse.ArgumentParser(prog="tropglue", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count rational plane curves tropically")
    p.add_argument("--degree", "-d", type=_positive, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle", action="store_true", help="compare with the Kontsevich recursion")
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--save", metavar="FILE", help="write the enumerated curves as JSON")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("evaluate", help="evaluate the gluing formula on curve files")
    p.add_argument("--curves", required=True)
    p.add_argument("--table")
    p.add_argument("--root", default=None, help="vertex id to root the recursion at")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("render", help="draw a curve as SVG")
    p.add_argument("--curve", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--index", type=int, default=0)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("check", help="run the property suite and acceptance checks")
    p.add_argument("--table", help="table file to use for the corner example")
    p.add_argument("--seeds", type=_positive, default=5)
    p.set_defaults(func=cmd_check)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (TropGlueError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
