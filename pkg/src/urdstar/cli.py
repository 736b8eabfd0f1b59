"""Command-line entry point: construct, verify, params and oracle.

Exit codes: 0 ok, 1 I/O or parse error, 2 inadmissible (n, v),
3 verification failure, 4 the oracle proved nonexistence, 5 oracle timeout.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .arrays import construct_urd
from .core import InadmissibleError, enumerate_admissible
from .io import DocumentError, dumps, loads, to_dot, to_edge_list
from .oracle import DEFAULT_BUDGET, NONE, WITNESS, brute_force_urd
from .verify import verify_urd

EXIT_OK = 0
EXIT_IO = 1
EXIT_INADMISSIBLE = 2
EXIT_INVALID = 3
EXIT_NONEXISTENT = 4
EXIT_TIMEOUT = 5

FORMATS = {"json": dumps, "dot": to_dot, "edges": to_edge_list}


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _emit(text: str, out: Optional[str]) -> int:
    if out is None:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            # reader went away (e.g. piped into head); silence the flush at exit
            sys.stdout = open(os.devnull, "w")
            return EXIT_IO
        return EXIT_OK
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as e:
        _err(f"cannot write {out}: {e}")
        return EXIT_IO
    return EXIT_OK


def cmd_construct(n: int, v: int, fmt: str = "json", out: Optional[str] = None) -> int:
    try:
        d = construct_urd(n, v)
    except (InadmissibleError, TypeError, ValueError) as e:
        # InadmissibleError names every failing congruence
        _err(str(e))
        return EXIT_INADMISSIBLE
    return _emit(FORMATS[fmt](d), out)


def cmd_verify(path: str) -> int:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        _err(f"cannot read {path}: {e}")
        return EXIT_IO
    try:
        d = loads(text, verify=False)
    except DocumentError as e:
        _err(f"{path}: {e}")
        return EXIT_IO
    report = verify_urd(d)
    if report.ok:
        print(f"ok: v={d.v} n={d.n} s={d.s}")
        return EXIT_OK
    first = report.first()
    _err(f"invalid: {first.kind} {first.witness}: {first.detail}")
    _err(f"{len(report.violations)} violation(s) reported, kinds: {', '.join(sorted(report.kinds()))}")
    return EXIT_INVALID


def cmd_params(n: int, v_max: int) -> int:
    try:
        rows = enumerate_admissible(n, v_max)
    except (TypeError, ValueError) as e:
        _err(str(e))
        return EXIT_INADMISSIBLE
    print("v\tg\ts\tk'\tt")
    for p in rows:
        print(f"{p.v}\t{p.g}\t{p.s}\t{p.k_prime}\t{p.t}")
    return EXIT_OK


def cmd_oracle(n: int, v: int, budget: int = DEFAULT_BUDGET, out: Optional[str] = None) -> int:
    try:
        r = brute_force_urd(n, v, budget)
    except (TypeError, ValueError) as e:
        _err(str(e))
        return EXIT_INADMISSIBLE
    detail = f" ({r.reason})" if r.reason else ""
    _err(f"{r.status} after {r.nodes} nodes{detail}")
    if r.status == WITNESS:
        return _emit(dumps(r.decomposition), out)
    return EXIT_NONEXISTENT if r.status == NONE else EXIT_TIMEOUT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="urdstar",
        description="Uniformly resolvable decompositions of K_v into one perfect matching and n-star factors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a decomposition for admissible (n, v)")
    p.add_argument("--n", type=int, required=True, help="star size (odd, at least 3)")
    p.add_argument("--v", type=int, required=True, help="number of vertices")
    p.add_argument("--format", choices=sorted(FORMATS), default="json")
    p.add_argument("--out", help="output file (default: stdout)")

    p = sub.add_parser("verify", help="check a JSON decomposition document")
    p.add_argument("--in", dest="path", required=True, help="document to check")

    p = sub.add_parser("params", help="list admissible v up to a bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-v", type=int, required=True)

    p = sub.add_parser("oracle", help="exhaustive search on a tiny instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="node limit")
    p.add_argument("--out", help="witness output file (default: stdout)")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "construct":
        return cmd_construct(args.n, args.v, args.format, args.out)
    if args.command == "verify":
        return cmd_verify(args.path)
    if args.command == "params":
        return cmd_params(args.n, args.max_v)
    return cmd_oracle(args.n, args.v, args.budget, args.out)


if __name__ == "__main__":
    sys.exit(main())
