"""Command-line front end.

Subcommands: info, graph, dim, classes, iso, verify, corpus. Plain text
is the default; ``--json`` switches every command to a stable schema.
Exit status: 0 when all requested checks pass (or are inconclusive by
budget), 1 on any check failure or formula/oracle mismatch, 2 on bad
input (spec syntax, broken table files, order cap).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from pathlib import Path

from .checks import verification_suite
from .graphs import export_dot, power_digraph, power_graph, transitive_orientation
from .groups import DEFAULT_ORDER_CAP, Group, GroupError, build_group
from .metric import (DimensionMismatchError, dim_formula, resolving_involutions,
                     twin_partition)
from .oracle import ISO_BUDGET, BudgetExceeded, SearchBudget, graph_iso
from .posets import power_graph_iso
from .corpus import iter_corpus
from .report import CorpusRow, render_figures, write_csv

ENV_BUDGET = "POWERGRAPH_BUDGET_SECONDS"
ORACLE_ORDER_LIMIT = 48


def _budget_seconds(args) -> float:
    if args.budget_seconds is not None:
        return float(args.budget_seconds)
    env = os.environ.get(ENV_BUDGET)
    return float(env) if env else 120.0


def _dim_budget(args, max_vertices: int = ORACLE_ORDER_LIMIT) -> SearchBudget:
    return SearchBudget(max_vertices=max_vertices, max_candidates=1_000_000,
                        seconds=_budget_seconds(args))


def _build(args, text: str) -> Group:
    return build_group(text, max_order=args.max_order)


def _emit(payload: dict, as_json: bool, lines: list[str]) -> None:
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _named(g: Group, xs) -> str:
    xs = list(xs)
    if not xs:
        return "none"
    return "{" + ", ".join(g.names[x] for x in xs) + "}"


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_info(args) -> int:
    g = _build(args, args.spec)
    histogram = Counter(int(o) for o in g.orders)
    total, holds = g.euler_sum_check()
    maxinv = g.maximal_involutions()
    payload = {
        "spec": args.spec,
        "order": g.n,
        "order_histogram": {str(k): v for k, v in sorted(histogram.items())},
        "cyclic_subgroups": len(g.cyclic_subgroup_poset),
        "totient_sum": total,
        "totient_sum_matches_order": holds,
        "maximal_involutions": [g.names[x] for x in maxinv],
    }
    lines = [
        f"group {args.spec}: order {g.n}",
        "element orders: " + ", ".join(f"{k}x{v}" for k, v in sorted(histogram.items())),
        f"cyclic subgroups: {len(g.cyclic_subgroup_poset)}",
        f"totient sum: {total} ({'matches order' if holds else 'MISMATCH'})",
        f"maximal involutions: {_named(g, maxinv)}",
    ]
    _emit(payload, args.json, lines)
    return 0 if holds else 1


def cmd_graph(args) -> int:
    g = _build(args, args.spec)
    if args.kind == "digraph":
        obj = power_digraph(g)
        pairs = obj.arc_list()
        count = f"{obj.arc_count} arcs"
    elif args.kind == "orientation":
        obj = transitive_orientation(g)
        pairs = obj.arc_list()
        count = f"{obj.arc_count} arcs"
    else:
        obj = power_graph(g)
        pairs = obj.edges()
        count = f"{obj.edge_count} edges"
    if args.dot:
        Path(args.dot).write_text(export_dot(obj, g.names))
    if args.json:
        payload = {"spec": args.spec, "kind": args.kind, "n": g.n,
                   "edges" if args.kind == "graph" else "arcs": [[i, j] for i, j in pairs]}
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        sep = " -- " if args.kind == "graph" else " -> "
        lines = [f"power {args.kind} of {args.spec}: {g.n} vertices, {count}"]
        lines += [f"  {g.names[i]}{sep}{g.names[j]}" for i, j in pairs]
        if args.dot:
            lines.append(f"DOT written to {args.dot}")
        print("\n".join(lines))
    return 0


def cmd_dim(args) -> int:
    g = _build(args, args.spec)
    budget = _dim_budget(args)
    try:
        report = dim_formula(g, verify=args.verify, budget=budget if args.verify else None)
        mismatch = False
    except DimensionMismatchError as exc:
        report = exc.report
        mismatch = True
    payload = {"spec": args.spec, **report.to_json_dict()}
    family = "yes" if report.family.member else "no"
    if report.family.member:
        family += f" (p={report.family.p})"
    lines = [
        f"group {args.spec}: order {report.order}",
        f"twin classes: {report.u_count}",
        f"resolving involutions: {report.w_count}",
        f"exceptional family: {family}",
        f"lower bound: {report.lower_bound}",
        f"dimension (formula): {report.dim_formula}",
    ]
    if mismatch:
        lines.append(f"dimension (oracle): {report.dim_oracle}  MISMATCH")
    elif args.verify and report.dim_oracle is not None:
        lines.append(f"dimension (oracle): {report.dim_oracle}  MATCH")
    elif args.verify:
        lines.append(f"dimension (oracle): inconclusive ({report.oracle_note})")
    _emit(payload, args.json, lines)
    return 1 if mismatch else 0


def cmd_classes(args) -> int:
    g = _build(args, args.spec)
    part = g.generator_partition
    tp = twin_partition(g)
    resolving = resolving_involutions(g)
    payload = {
        "spec": args.spec,
        "order": g.n,
        "names": list(g.names),
        "generator_classes": [list(c) for c in part.classes],
        "twin_classes": [{"members": list(c.members), "kind": c.kind} for c in tp.classes],
        "resolving_involutions": [
            {"w": r.w, "pairs": [list(p) for p in r.pairs]} for r in resolving],
    }
    lines = [f"group {args.spec}: order {g.n}",
             f"generator classes ({len(part.classes)}):"]
    lines += [f"  {_named(g, c)}" for c in part.classes]
    lines.append(f"twin classes ({len(tp.classes)}):")
    lines += [f"  {_named(g, c.members)}  [{c.kind}]" for c in tp.classes]
    if resolving:
        lines.append("resolving involutions:")
        for r in resolving:
            first = r.pairs[0]
            lines.append(f"  {g.names[r.w]} ({len(r.pairs)} witness pairs, "
                         f"e.g. ({g.names[first[0]]}, {g.names[first[1]]}))")
    else:
        lines.append("resolving involutions: none")
    _emit(payload, args.json, lines)
    return 0


def cmd_iso(args) -> int:
    g1 = _build(args, args.spec1)
    g2 = _build(args, args.spec2)
    same = power_graph_iso(g1, g2)
    verdict = "isomorphic" if same else "NOT isomorphic"
    payload = {"spec1": args.spec1, "spec2": args.spec2, "poset_criterion": same}
    lines = [f"power graphs of {args.spec1} and {args.spec2}: {verdict} (poset criterion)"]
    status = 0
    if args.verify:
        budget = SearchBudget(max_vertices=ISO_BUDGET.max_vertices,
                              max_candidates=ISO_BUDGET.max_candidates,
                              seconds=_budget_seconds(args))
        try:
            bijection = graph_iso(power_graph(g1), power_graph(g2), budget)
            oracle_same = bijection is not None
            agreement = oracle_same == same
            payload["graph_oracle"] = oracle_same
            payload["agreement"] = agreement
            lines.append(f"generic graph search: {'isomorphic' if oracle_same else 'NOT isomorphic'}"
                         f" ({'agrees' if agreement else 'DISAGREES'})")
            if not agreement:
                status = 1
        except BudgetExceeded as exc:
            payload["graph_oracle"] = None
            payload["agreement"] = None
            lines.append(f"generic graph search: inconclusive ({exc})")
    _emit(payload, args.json, lines)
    return status


def cmd_verify(args) -> int:
    g = _build(args, args.spec)
    results = verification_suite(g)
    pg = power_graph(g)
    payload = {
        "spec": args.spec,
        "order": g.n,
        "complete_power_graph": pg.is_complete(),
        "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
    }
    lines = [f"group {args.spec}: order {g.n}"]
    if pg.is_complete():
        lines.append(f"note: power graph is complete (K_{g.n})")
    for r in results:
        lines.append(f"{'PASS' if r.passed else 'FAIL'}  {r.name} ({r.detail})")
    failed = [r for r in results if not r.passed]
    lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed")
    _emit(payload, args.json, lines)
    return 1 if failed else 0


def _corpus_row(args, spec: str, g: Group) -> CorpusRow:
    results = verification_suite(g)
    passed = sum(1 for r in results if r.passed)
    run_oracle = g.n <= ORACLE_ORDER_LIMIT
    oracle_status = "skipped"
    oracle_value = None
    try:
        report = dim_formula(g, verify=run_oracle,
                             budget=_dim_budget(args) if run_oracle else None)
        if run_oracle:
            oracle_value = report.dim_oracle
            oracle_status = "match" if report.dim_oracle is not None else "inconclusive"
    except DimensionMismatchError as exc:
        report = exc.report
        oracle_value = report.dim_oracle
        oracle_status = "mismatch"
    return CorpusRow(
        spec=spec, order=g.n, u_count=report.u_count, w_count=report.w_count,
        exceptional=report.family.member, lower_bound=report.lower_bound,
        dim_formula=report.dim_formula, dim_oracle=oracle_value,
        oracle_status=oracle_status, checks_passed=passed, checks_total=len(results))


def cmd_corpus(args) -> int:
    rows = [
        _corpus_row(args, spec, g)
        for spec, g in iter_corpus(max_order=args.max_order
                                   if args.max_order != DEFAULT_ORDER_CAP else None)
    ]
    if args.json:
        print(json.dumps([r.to_json_dict() for r in rows], indent=2, sort_keys=True))
    else:
        header = (f"{'spec':<16}{'order':>6}{'|U|':>5}{'|W|':>5}{'exc':>5}"
                  f"{'dim':>6}{'oracle':>8}{'checks':>8}  status")
        print(header)
        print("-" * len(header))
        for r in rows:
            oracle = "-" if r.dim_oracle is None else str(r.dim_oracle)
            status = "ok" if r.ok else ("inconclusive" if r.oracle_status == "inconclusive"
                                        else "FAIL")
            print(f"{r.spec:<16}{r.order:>6}{r.u_count:>5}{r.w_count:>5}"
                  f"{('yes' if r.exceptional else 'no'):>5}{r.dim_formula:>6}"
                  f"{oracle:>8}{f'{r.checks_passed}/{r.checks_total}':>8}  {status}")
        bad = sum(1 for r in rows if not r.ok)
        print(f"{len(rows)} groups, {bad} failures")
    if args.report_dir:
        directory = Path(args.report_dir)
        directory.mkdir(parents=True, exist_ok=True)
        csv_path = write_csv(rows, directory / "corpus.csv")
        figure_paths = render_figures(rows, directory)
        for p in [csv_path, *figure_paths]:
            print(f"wrote {p}", file=sys.stderr)
    return 0 if all(r.ok for r in rows) else 1


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--json", action="store_true", help="emit JSON instead of text")
    shared.add_argument("--dot", metavar="PATH", help="write a DOT rendering to PATH")
    shared.add_argument("--verify", action="store_true",
                        help="cross-check against the brute-force oracle")
    shared.add_argument("--budget-seconds", type=int, default=None,
                        help=f"oracle time budget (default 120, or ${ENV_BUDGET})")
    shared.add_argument("--max-order", type=int, default=DEFAULT_ORDER_CAP,
                        help="construction cap; also filters the corpus command")

    parser = argparse.ArgumentParser(
        prog="powergraph",
        description="Power graphs of finite groups: structure and metric dimension.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", parents=[shared], help="order profile of a group")
    p.add_argument("spec")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("graph", parents=[shared], help="emit the power graph")
    p.add_argument("spec")
    p.add_argument("--kind", choices=["graph", "digraph", "orientation"], default="graph")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("dim", parents=[shared], help="metric dimension report")
    p.add_argument("spec")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("classes", parents=[shared],
                       help="generator classes, twin classes, resolving involutions")
    p.add_argument("spec")
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("iso", parents=[shared], help="compare two power graphs")
    p.add_argument("spec1")
    p.add_argument("spec2")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("verify", parents=[shared], help="run the verification suite")
    p.add_argument("spec")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("corpus", parents=[shared],
                       help="verify and measure the built-in corpus")
    p.add_argument("--report-dir", metavar="DIR",
                   help="write corpus.csv and report figures into DIR")
    p.set_defaults(func=cmd_corpus)

    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except GroupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
