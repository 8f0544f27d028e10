"""Command line interface.

Exit codes: 0 the verdict holds, 1 it fails, 2 bad input (malformed file,
unknown option, unwritable path), 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import __version__
from .engine import Budget, irrelevant_scan, solve, vital_check
from .errors import CertificateError, InputError, LinkageError, ResourceLimitError
from .family import (
    CONTROL_NAMES,
    build_instance,
    canonical_linkage,
    control_instance,
    grid_certificate,
    non_grid_chords,
    source_contraction,
)
from .formats import dumps_instance, dumps_report, make_report, read_instance, to_dimacs, to_dot
from .graph import is_k_connected, min_vertex_cut, validate_linkage
from .width import EXACT_VERTEX_CAP, exact_pathwidth, exact_treewidth, width_report

EXIT_HOLDS, EXIT_FAILS, EXIT_INPUT, EXIT_CAPPED = 0, 1, 2, 3
VERDICT_EXIT = {"holds": EXIT_HOLDS, "fails": EXIT_FAILS, "capped": EXIT_CAPPED}
CHECKS = ("grid", "linkage", "vital", "irrelevant", "width", "cut", "connectivity")


def _check_grid(inst, args):
    try:
        cert = grid_certificate(inst)
        chords = non_grid_chords(inst, cert)
    except CertificateError as exc:
        return {"error": str(exc)}, "fails"
    result = {
        "rows": cert.m,
        "cols": cert.n,
        "bijective": len(cert.cell) == inst.graph.n,
        "grid_edges": sum(1 for _ in cert.grid_edges()),
        "chords": [[list(e), col] for e, col in chords],
    }
    return result, "holds"


def _check_linkage(inst, args):
    paths = canonical_linkage(inst)
    try:
        pattern = validate_linkage(inst.graph, paths)
    except LinkageError as exc:
        return {"error": str(exc)}, "fails"
    spanning = sum(len(p) for p in paths) == inst.graph.n
    matches = pattern == inst.terminal_pattern()
    result = {"path_sizes": [len(p) for p in paths], "spanning": spanning, "pattern_matches": matches}
    return result, "holds" if spanning and matches else "fails"


def _check_vital(inst, args):
    res = vital_check(inst, canonical_linkage(inst), engine=args.engine, budget=_budget(args))
    result = {"status": res.status, "count": res.count}
    if res.witness is not None:
        result["witness"] = [list(p) for p in res.witness]
    if res.status == "capped":
        return result, "capped"
    return result, "holds" if res.status == "vital" else "fails"


def _check_irrelevant(inst, args):
    res = irrelevant_scan(inst, engine=args.engine, budget=_budget(args))
    result = {
        "irrelevant": sorted(res.irrelevant),
        "deletions_checked": res.checked,
        "base_solvable": res.base_solvable,
        "complete": res.complete,
    }
    if not res.complete:
        return result, "capped"
    return result, "holds" if not res.irrelevant else "fails"


def _check_width(inst, args):
    if inst.is_family and inst.p == 2 ** inst.k - 1:
        rep = width_report(inst)
        result = {
            "lower": rep.lower,
            "lower_certificate": rep.lower_certificate,
            "upper": rep.upper,
            "upper_bags": len(rep.upper_decomposition.bags),
            "exact": rep.exact,
            "exact_treewidth": rep.exact_treewidth,
            "exact_pathwidth": rep.exact_pathwidth,
        }
        return result, "holds" if rep.lower == rep.upper else "fails"
    if inst.graph.n > EXACT_VERTEX_CAP:
        raise ResourceLimitError(f"{inst.name!r} is neither a square family instance nor small")
    tw = exact_treewidth(inst.graph)
    pw = exact_pathwidth(inst.graph)
    return {"exact_treewidth": tw, "exact_pathwidth": pw}, "holds"


def _check_cut(inst, args):
    cert = grid_certificate(inst)
    first, last = cert.column(1), cert.column(cert.n)
    if cert.n < 3:
        raise InputError("cut check needs at least three grid columns")
    size, cut = min_vertex_cut(inst.graph, first, last)
    result = {"columns": [1, cert.n], "rows": cert.m, "cut_size": size, "cut": sorted(cut)}
    return result, "holds" if size == cert.m else "fails"


def _check_connectivity(inst, args):
    g, edge = source_contraction(inst)
    ok = is_k_connected(g, 3)
    result = {"contracted_edge": list(edge), "vertices": g.n, "three_connected": ok}
    return result, "holds" if ok else "fails"


_CHECKERS = {
    "grid": _check_grid,
    "linkage": _check_linkage,
    "vital": _check_vital,
    "irrelevant": _check_irrelevant,
    "width": _check_width,
    "cut": _check_cut,
    "connectivity": _check_connectivity,
}


def _budget(args) -> Budget:
    return Budget(
        node_budget=args.node_budget,
        state_budget=args.state_budget,
        time_budget=args.time_budget,
        max_width=args.max_width,
    )


def _emit(args, report_kwargs, stats):
    report = make_report(stats=None if args.no_stats else stats, **report_kwargs)
    sys.stdout.write(dumps_report(report))
    return VERDICT_EXIT[report["verdict"]]


def _write_text(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
        return EXIT_HOLDS
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_HOLDS


def cmd_gen(args) -> int:
    inst = build_instance(args.k, args.p)
    for note in inst.notes:
        print(f"warning: {note}", file=sys.stderr)
    return _write_text(dumps_instance(inst), args.out)


def cmd_control(args) -> int:
    return _write_text(dumps_instance(control_instance(args.name)), args.out)


def cmd_export(args) -> int:
    inst = read_instance(args.file)
    text = to_dot(inst) if args.format == "dot" else to_dimacs(inst)
    return _write_text(text, args.out)


def cmd_verify(args) -> int:
    inst = read_instance(args.file)
    params = {"check": args.check, "engine": args.engine}
    start = time.perf_counter()
    try:
        result, verdict = _CHECKERS[args.check](inst, args)
    except ResourceLimitError as exc:
        result, verdict = {"error": str(exc)}, "capped"
    stats = {"elapsed_s": round(time.perf_counter() - start, 6)}
    kwargs = dict(instance=inst.name, operation=f"verify:{args.check}", parameters=params,
                  result=result, verdict=verdict)
    return _emit(args, kwargs, stats)


def cmd_solve(args) -> int:
    inst = read_instance(args.file)
    params = {"mode": args.mode, "engine": args.engine, "limit": args.limit}
    try:
        rep = solve(inst, args.mode, args.engine, limit=args.limit, budget=_budget(args))
    except ResourceLimitError as exc:
        kwargs = dict(instance=inst.name, operation="solve", parameters=params,
                      result={"error": str(exc)}, verdict="capped")
        return _emit(args, kwargs, {})
    result = {"solvable": rep.solvable, "count": rep.count, "engine": rep.engine}
    if rep.solutions is not None:
        result["solutions"] = [[list(p) for p in sol] for sol in rep.solutions]
    if rep.capped:
        verdict = "capped"
    else:
        verdict = "holds" if rep.solvable else "fails"
    kwargs = dict(instance=inst.name, operation="solve", parameters=params,
                  result=result, verdict=verdict)
    return _emit(args, kwargs, rep.stats)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vitallink",
        description="Generate and certify folded-grid disjoint paths instances.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write the instance G(k, p)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=int, default=None, help="row length, default 2**k - 1")
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("control", help="write a negative-control instance")
    p.add_argument("name", choices=CONTROL_NAMES)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_control)

    p = sub.add_parser("export", help="convert an instance file to DOT or DIMACS")
    p.add_argument("file")
    p.add_argument("--format", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_export)

    def budgets(p):
        p.add_argument("--engine", choices=("auto", "backtrack", "td-dp"), default="auto")
        p.add_argument("--node-budget", type=int, default=Budget.node_budget,
                       help="backtracking nodes before giving up (default %(default)s)")
        p.add_argument("--state-budget", type=int, default=Budget.state_budget,
                       help="DP table entries before giving up (default %(default)s)")
        p.add_argument("--time-budget", type=float, default=None,
                       help="seconds per solver call (default: unlimited)")
        p.add_argument("--max-width", type=int, default=Budget.max_width,
                       help="widest decomposition the DP accepts (default %(default)s)")
        p.add_argument("--no-stats", action="store_true",
                       help="omit the timing/statistics block from the report")

    p = sub.add_parser("verify", help="run one certification and print a report")
    p.add_argument("file")
    p.add_argument("--check", required=True, choices=CHECKS)
    budgets(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="decide, count or enumerate solutions")
    p.add_argument("file")
    p.add_argument("--mode", choices=("decide", "count", "enumerate"), default="count")
    p.add_argument("--limit", type=int, default=10)
    budgets(p)
    p.set_defaults(func=cmd_solve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_HOLDS
    if getattr(args, "format", None) not in (None, "dot", "dimacs"):
        print(f"error: unknown export format {args.format!r}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, CertificateError, LinkageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
