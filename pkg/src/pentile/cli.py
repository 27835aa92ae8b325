"""Command line: enumerate, search, render."""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter


def _positive(text):
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def _positive_float(text):
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return x


def check_against_golden(records, golden) -> list:
    """Mismatch messages between enumerated records and the golden rows."""
    from .vectypes import same_polytope
    problems = []
    by_index = {r.index: r for r in records}
    if len(records) != len(golden):
        problems.append(f"class count {len(records)} != {len(golden)}")
    for i, dim, struck, basis in golden:
        r = by_index.get(i)
        if r is None:
            problems.append(f"case {i}: missing")
            continue
        if r.dim != dim:
            problems.append(f"case {i}: dim {r.dim} != {dim}")
        if r.struck != struck:
            problems.append(f"case {i}: struck flag {r.struck} != {struck}")
        if not same_polytope(r.basis, basis):
            problems.append(f"case {i}: basis spans a different polytope")
    return problems


def cmd_enumerate(args) -> int:
    from .goodset_enum import emit_tables, enumerate_all, load_golden, parse_tables, write_tsv
    golden = load_golden()
    records, info = enumerate_all(golden)
    write_tsv(records, args.out)
    dims = Counter(r.dim for r in records)
    print(f"{info['maximal']} maximal")
    print(f"{info['permuted']} permuted")
    print(f"{info['classes']} classes")
    for d in (3, 2, 1, 0):
        print(f"dim {d}: {dims[d]}")
    print(f"wrote {args.out}")
    if not args.check:
        return 0
    problems = check_against_golden(records, golden)
    # the emitted table text must also read back to the same rows
    parsed = parse_tables(emit_tables(records))
    for r in records:
        if parsed.get(r.index) != (r.dim, r.struck, r.basis):
            problems.append(f"case {r.index}: table text does not round-trip")
    if info["maximal"] != 193 or info["permuted"] != 3495:
        problems.append(f"counts {info['maximal']}/{info['permuted']} differ from 193/3495")
    for p in problems:
        print("mismatch:", p, file=sys.stderr)
    print("check:", "ok" if not problems else f"{len(problems)} mismatches")
    return 0 if not problems else 3


def cmd_search(args) -> int:
    from .search import InvalidCase, Limits, search_all
    from .search.driver import case_set
    limits = Limits(max_tiles=args.max_tiles, max_nodes=args.max_nodes,
                    cert_period=args.cert_period, time=args.time)
    if args.all:
        cases = None
    else:
        try:
            case_set(args.case)
        except InvalidCase as e:
            print(f"error: {e}", file=sys.stderr)
            return 2
        cases = [args.case]
    sink = open(args.report, "w") if args.report else None
    try:
        verdicts = search_all(limits, cases, args.threads, sink, args.snapshot_dir)
    finally:
        if sink is not None:
            sink.close()
    for v in verdicts:
        fams = ",".join(str(f) for f in v.families)
        extra = f" limit={v.stats['limit']}" if "limit" in v.stats else ""
        print(f"case {v.case_index}: {v.outcome} {{{fams}}} nodes={v.stats['nodes']} "
              f"tiles={v.stats['max_tiles']}{extra}")
    return 0


def cmd_render(args) -> int:
    from .render import InfeasibleSnapshot, render_snapshot
    try:
        with open(args.snapshot) as f:
            text = f.read()
        svg, worst = render_snapshot(text, args.scale)
    except (OSError, ValueError, KeyError, TypeError, json.JSONDecodeError) as e:
        kind = "infeasible snapshot" if isinstance(e, InfeasibleSnapshot) else "cannot read snapshot"
        print(f"error: {kind}: {e}", file=sys.stderr)
        return 2
    with open(args.out, "w") as f:
        f.write(svg)
    print(f"wrote {args.out} (vertex mismatch {worst:.2e})")
    if worst > 1e-9:
        print("error: placed tiles disagree by more than 1e-9", file=sys.stderr)
        return 4
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pentile")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", help="enumerate maximal good sets and classify them")
    e.add_argument("--check", action="store_true", help="compare against the golden tables")
    e.add_argument("--out", default="goodsets.tsv")
    e.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("search", help="run the tiling search")
    which = s.add_mutually_exclusive_group(required=True)
    which.add_argument("--case", type=int)
    which.add_argument("--all", action="store_true")
    s.add_argument("--max-tiles", type=_positive, default=50)
    s.add_argument("--max-nodes", type=_positive, default=10 ** 6)
    s.add_argument("--threads", type=_positive, default=1)
    s.add_argument("--cert-period", type=_positive, default=8)
    s.add_argument("--time", type=_positive_float, default=None,
                   help="wall-clock seconds per case")
    s.add_argument("--report", help="JSON-lines report path")
    s.add_argument("--snapshot-dir", help="where to write graphs of inconclusive cases")
    s.set_defaults(func=cmd_search)

    r = sub.add_parser("render", help="draw a graph snapshot as SVG")
    r.add_argument("--snapshot", required=True)
    r.add_argument("--out", required=True)
    r.add_argument("--scale", type=_positive_float, default=400.0)
    r.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
