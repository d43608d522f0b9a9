"""Command-line interface: build, solve, lift, gog, verify, report.

Exit codes: 0 when every claim checked out, 1 on a discrepancy/unknown/negative answer,
2 on usage or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .actions import load_actions
from .catalog import (Budgets, CatalogError, all_verified, default_jobs, find_entry,
                      load_catalog, parse_catalog, resolve_catalog_path, run_all, shipped_catalog)
from .graph import GraphError, regular_valency
from .graphio import format_graph, read_graph
from .hamilton import DEFAULT_BUDGET, check_certificate, hamilton_cycle, hamilton_path
from .lift import LiftError, hamilton_via_lift, lift_cycle, quotient_voltage
from .orbital import connected_gogs, orbital_graphs, relevant_set
from .perm import GroupError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _entry_from_arg(arg: str):
    path = Path(arg)
    if path.suffix == ".json" and path.exists():
        data = json.loads(path.read_text())
        entries = parse_catalog([data] if isinstance(data, dict) else data)
        if not entries:
            raise UsageError(f"{arg}: no entries")
        return entries[0]
    try:
        return find_entry(arg)
    except KeyError:
        raise UsageError(f"unknown entry id or spec file: {arg}") from None


def cmd_build(args) -> int:
    entry = _entry_from_arg(args.entry)
    X = entry.build()
    text = format_graph(X, args.format)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_solve(args) -> int:
    X = read_graph(args.graph)
    if args.path:
        ends = tuple(args.endpoints) if args.endpoints else None
        res = hamilton_path(X, args.budget, ends)
    else:
        res = hamilton_cycle(X, args.budget)
    out = res.to_json()
    if res.found:
        out["certificate_valid"] = check_certificate(X, res.certificate, res.closed)
    print(_dump(out))
    return EXIT_OK if res.found and out["certificate_valid"] else EXIT_FAIL


def cmd_lift(args) -> int:
    entry = _entry_from_arg(args.entry)
    rho = entry.rotation()
    if rho is None:
        raise UsageError(f"{entry.id}: payload has no built-in semiregular automorphism")
    X = entry.build()
    q = quotient_voltage(X, rho)
    out = {"id": entry.id, "quotient": q.to_json()}
    try:
        cyc = hamilton_via_lift(q)
    except LiftError as exc:
        out["error"] = str(exc)
        print(_dump(out))
        return EXIT_FAIL
    out["hamilton_cycle"] = cyc
    out["certificate_valid"] = cyc is not None and check_certificate(X, cyc, True)
    if args.cycle:
        out["lift"] = lift_cycle(q, args.cycle, args.voltages or []).to_json()
    print(_dump(out))
    return EXIT_OK if out["certificate_valid"] else EXIT_FAIL


def cmd_gog(args) -> int:
    actions = load_actions(args.actions)
    if args.action not in actions:
        raise UsageError(f"unknown action {args.action!r}; known: {', '.join(actions)}")
    spec = actions[args.action]
    ogs = orbital_graphs(spec.build())
    t = ogs.table
    out = {"action": spec.id, "description": spec.description, "degree": ogs.degree,
           "suborbits": [{"index": i, "length": len(U), "paired_with": t.pairing[i],
                          "self_paired": t.pairing[i] == i} for i, U in enumerate(t.suborbits)]}
    if args.list:
        out["connected_gogs"] = [{"suborbits": list(c.selection),
                                  "valency": regular_valency(c.graph), "count": c.count}
                                 for c in connected_gogs(ogs)]
    if args.relevant:
        out["relevant"] = [{"suborbits": list(sel), "valency": regular_valency(X)}
                           for sel, X in relevant_set(ogs)]
    print(_dump(out))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.catalog:
        entries = []
        for c in args.catalog:
            entries += load_catalog(resolve_catalog_path(c))
    else:
        entries = shipped_catalog()
    budgets = Budgets(hamilton=args.timeout_nodes)
    reports, summary = run_all(entries, budgets, args.jobs)
    data = [r.to_json() for r in reports]
    if args.output:
        Path(args.output).write_text(_dump(data) + "\n")
    if args.text:
        for r in reports:
            ham = (r.hamilton or {}).get("kind", "-")
            extra = f" path={r.hamilton_path['kind']}" if r.hamilton_path else ""
            why = f"  [{'; '.join(r.discrepancies)}]" if r.discrepancies else ""
            print(f"{r.id:32s} {r.status:17s} n={r.order} k={r.valency_observed} "
                  f"cycle={ham}{extra}{why}")
        print(" ".join(f"{k}={v}" for k, v in summary.items()))
    else:
        print(_dump(data))
    return EXIT_OK if all_verified(reports) else EXIT_FAIL


def cmd_report(args) -> int:
    from .report import render  # matplotlib is only needed here

    data = json.loads(Path(args.reports).read_text())
    if not isinstance(data, list):
        raise UsageError(f"{args.reports}: expected a JSON array of reports")
    outdir = args.out or str(Path(args.reports).with_suffix("")) + "_report"
    for p in render(data, outdir):
        print(p)
    ok = all(r.get("status") in ("verified", "unreconstructable") for r in data)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vt6p", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="cmd", required=True)

    b = sub.add_parser("build", help="emit the graph of a catalog entry")
    b.add_argument("entry", help="entry id (e.g. qprim_row1/X_1) or JSON spec file")
    b.add_argument("--format", choices=["graph6", "edgelist"], default="graph6")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_build)

    s = sub.add_parser("solve", help="Hamilton cycle/path search on a graph file")
    s.add_argument("graph", help="graph6 or edge-list file")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--cycle", action="store_true", default=True)
    mode.add_argument("--path", action="store_true")
    s.add_argument("--endpoints", type=int, nargs=2, metavar=("A", "B"))
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="node expansions")
    s.set_defaults(func=cmd_solve)

    li = sub.add_parser("lift", help="voltage quotient and lifted Hamilton cycle of an entry")
    li.add_argument("entry")
    li.add_argument("--cycle", type=int, nargs="+", help="explicit quotient cycle to lift")
    li.add_argument("--voltages", type=int, nargs="+", help="one voltage per step of --cycle")
    li.set_defaults(func=cmd_lift)

    g = sub.add_parser("gog", help="suborbits and generalized orbital graphs of an action")
    g.add_argument("action", help="action id from actions.json (e.g. qprim_row1)")
    g.add_argument("--list", action="store_true", help="connected GOGs up to isomorphism")
    g.add_argument("--relevant", action="store_true", help="relevant set")
    g.add_argument("--actions", help="alternative action file")
    g.set_defaults(func=cmd_gog)

    v = sub.add_parser("verify", help="run the verification pipeline over catalogs")
    v.add_argument("--catalog", action="append", help="catalog file (repeatable; default: all shipped)")
    v.add_argument("--jobs", type=int, default=default_jobs(),
                   help="worker processes (default from $VT6P_JOBS or 1)")
    fmt = v.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=True)
    fmt.add_argument("--text", action="store_true")
    v.add_argument("--timeout-nodes", type=int, default=DEFAULT_BUDGET,
                   help="node-expansion budget per solve")
    v.add_argument("-o", "--output", help="also write the JSON reports here")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("report", help="render TSV summary and figures from a reports file")
    r.add_argument("reports")
    r.add_argument("--out", help="output directory (default: <reports>_report)")
    r.set_defaults(func=cmd_report)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError, CatalogError, GraphError, GroupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LiftError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
