"""Command-line surface.

Exit codes: 0 success, 2 invalid arguments or refused work, 3 unresolved
search, 4 verification or merge failure.  Machine-readable output goes to
stdout or --out files; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from . import arith, stats, store, vectors
from .resolver import CmResult, Reason, compute_C
from .search import (
    DEFAULT_N_MAX,
    SearchMemoryError,
    brute_force,
    meet_in_middle,
    modified_five_cycle,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNRESOLVED = 3
EXIT_VERIFY = 4

BUDGET_ENV = "ODDCYCLES_BUDGET"
DEFAULT_BUDGET = 10**9


def _default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


def _fmt_vec(v: tuple[int, ...]) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def _print_result(res: CmResult) -> None:
    value = "unresolved" if res.value is None else str(res.value)
    print(f"C_{res.m}({res.r}) = {value}")
    print(f"reason: {res.reason.value}")
    print(f"reduced_r: {res.reduced_r}")
    if res.certificate is not None:
        print("certificate: " + " ".join(_fmt_vec(v) for v in res.certificate.vectors))


def cmd_c(args: argparse.Namespace) -> int:
    res = compute_C(args.m, args.r, n_max=args.n_max, workers=args.workers)
    _print_result(res)
    return EXIT_UNRESOLVED if res.reason is Reason.UNRESOLVED else EXIT_OK


def cmd_decompose(args: argparse.Namespace) -> int:
    triples = arith.enumerate_triples(args.z)
    for tr in triples:
        print(f"{tr.a},{tr.b},{tr.c}")
    print(f"P({args.z}) = {len(triples)}", file=sys.stderr)
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    print(arith.classify(args.t).value)
    return EXIT_OK


def cmd_vectors(args: argparse.Namespace) -> int:
    vs = vectors.vector_set(args.t)
    print(f"|V({args.t})| = {len(vs)}")
    if args.list:
        for v in vs.vectors:
            print(_fmt_vec(v))
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    budget = args.budget if args.budget is not None else _default_budget()
    if args.algo == "modified":
        out = modified_five_cycle(args.t, workers=args.workers)
    else:
        vs = vectors.vector_set(args.t)
        if args.algo == "brute":
            size = vectors.search_space_size(max(len(vs), 1), args.length)
            if size > budget:
                print(
                    f"refusing brute force: estimated search space {size} "
                    f"exceeds budget {budget}",
                    file=sys.stderr,
                )
                return EXIT_USAGE
            out = brute_force(vs, args.length, workers=args.workers)
        else:
            try:
                out = meet_in_middle(vs, args.length, workers=args.workers)
            except SearchMemoryError as exc:
                print(f"memory budget exceeded: {exc}", file=sys.stderr)
                return EXIT_USAGE
    print(f"t: {out.t}")
    print(f"length: {out.length_tried}")
    print(f"exhausted: {out.exhausted}")
    print(f"nodes_examined: {out.nodes_examined}")
    print(f"elapsed_s: {out.elapsed:.3f}")
    if out.found is not None:
        print("cycle: " + " ".join(_fmt_vec(v) for v in out.found.vectors))
        print("verified: true")
    else:
        print("cycle: none")
    return EXIT_OK


def _table_rows(max_n: int, n_max: int, workers: int):
    for n in range(2, max_n, 4):
        res = compute_C(3, n, n_max=n_max, workers=workers)
        if res.value is None:
            raise RuntimeError(f"search unresolved at n={n}")
        yield n, res.value


def cmd_table(args: argparse.Namespace) -> int:
    lines = ["n,c3"]
    try:
        for n, c3 in _table_rows(args.max, args.n_max, args.workers):
            lines.append(f"{n},{c3}")
    except RuntimeError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_UNRESOLVED
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_density(args: argparse.Namespace) -> int:
    checkpoints = [int(x) for x in args.checkpoints.split(",") if x]
    rows = stats.density_table(checkpoints, workers=args.workers)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            stats.write_density_csv(rows, fh)
    else:
        stats.write_density_csv(rows, sys.stdout)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        records = store.load(args.infile)
    except store.StoreError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_VERIFY
    print(f"{len(records)} records verified")
    return EXIT_OK


def _record_from_result(
    res: CmResult, elapsed_ms: int, shard_id: int, workers: int
) -> store.ResultRecord:
    cert = None
    if res.certificate is not None:
        cert = tuple(res.certificate.vectors)
    algorithm = (
        "closed-form"
        if res.reason is not Reason.SEARCHED
        else "modified+meet-in-middle"
    )
    return store.ResultRecord(
        t=res.r,
        m=res.m,
        value=res.value,
        reason=res.reason.value,
        certificate=cert,
        algorithm=algorithm,
        elapsed_ms=elapsed_ms,
        nodes_examined=res.nodes_examined,
        shard_id=shard_id,
        worker_count=workers,
    )


def cmd_run(args: argparse.Namespace) -> int:
    try:
        lo_s, hi_s = args.range.split("..")
        lo, hi = int(lo_s), int(hi_s)
    except ValueError:
        print(f"bad --range {args.range!r}; expected A..B", file=sys.stderr)
        return EXIT_USAGE
    if args.shards < 1 or not (0 <= args.shard_id < args.shards):
        print("need 0 <= shard-id < shards", file=sys.stderr)
        return EXIT_USAGE

    # normalize both ends onto the t = 2 (mod 4) progression
    first = lo + ((2 - lo) % 4)
    targets = [
        t for idx, t in enumerate(range(first, hi + 1, 4)) if idx % args.shards == args.shard_id
    ]
    done = store.resolved_keys(args.out)
    unresolved = 0
    for t in targets:
        if (3, t) in done:
            continue
        t0 = time.perf_counter()
        res = compute_C(3, t, n_max=args.n_max, workers=args.workers)
        elapsed_ms = int((time.perf_counter() - t0) * 1000)
        if res.reason is Reason.UNRESOLVED:
            unresolved += 1
            print(f"unresolved at t={t}", file=sys.stderr)
        store.append(
            args.out,
            _record_from_result(res, elapsed_ms, args.shard_id, args.workers),
        )
    return EXIT_UNRESOLVED if unresolved else EXIT_OK


def cmd_merge(args: argparse.Namespace) -> int:
    try:
        records = store.merge(args.files, args.out)
    except store.StoreError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_VERIFY
    print(f"merged {len(records)} records into {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oddcycles",
        description="Minimum odd-length zero-sum cycles of equal-magnitude lattice vectors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_workers(p: argparse.ArgumentParser) -> None:
        p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("c", help="resolve C_m(r)")
    p.add_argument("m", type=int)
    p.add_argument("r", type=int)
    p.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    add_workers(p)
    p.set_defaults(func=cmd_c)

    p = sub.add_parser("decompose", help="triples a<=b<=c with a^2+b^2+c^2 = z")
    p.add_argument("z", type=int)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("classify", help="S or T for t = 2 (mod 4)")
    p.add_argument("t", type=int)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("vectors", help="size of V(t)")
    p.add_argument("t", type=int)
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_vectors)

    p = sub.add_parser("search", help="run one engine at one length")
    p.add_argument("t", type=int)
    p.add_argument("--algo", choices=("brute", "mitm", "modified"), required=True)
    p.add_argument("--length", type=int, default=5)
    p.add_argument("--budget", type=int, default=None)
    add_workers(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("table", help="C_3 chart for n = 2 (mod 4), n < max")
    p.add_argument("--max", type=int, default=2000)
    p.add_argument("--out", default=None)
    p.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    add_workers(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("density", help="class-T density rows")
    p.add_argument("--checkpoints", required=True)
    p.add_argument("--out", default=None)
    add_workers(p)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("verify", help="validate a record file")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("run", help="batch resolver with sharding and resume")
    p.add_argument("--range", required=True, help="A..B inclusive")
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--shard-id", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    add_workers(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("merge", help="merge record files")
    p.add_argument("files", nargs="+")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_merge)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
