"""Command-line front end.

Exit codes: 0 identifiable / minimal EMP found / all repro checks pass,
1 not identifiable or a repro check failed, 2 input error, 3 search budget
exhausted.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .document import (
    DocumentError,
    NetworkDocument,
    Report,
    classification_to_dict,
    load_document,
    search_to_dict,
    verdict_to_dict,
)
from .dot import to_dot
from .emp import cardinality_bounds, necessary_check
from .graph import NodeClassification, classify
from .repro import run_repro
from .search import OracleConfig, find_minimal_emp, validate_emp

EXIT_OK, EXIT_NOT_IDENTIFIABLE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
DEFAULT_SEED = 42


def _fmt_nodes(nodes) -> str:
    nodes = sorted(nodes)
    return ", ".join(map(str, nodes)) if nodes else "none"


def _fmt_witnessed(kind: str, chosen: dict[int, int], every: dict[int, tuple[int, ...]], verbose: bool) -> str:
    if not chosen:
        return "none"
    parts = []
    for v in sorted(chosen):
        if verbose:
            parts.append(f"{v} (witness {kind}s {_fmt_nodes(every[v])})")
        else:
            parts.append(f"{v} (witness {kind} {chosen[v]})")
    return ", ".join(parts)


def _classification_lines(cl: NodeClassification, verbose: bool) -> list[str]:
    return [
        f"sources: {_fmt_nodes(cl.sources)}",
        f"sinks: {_fmt_nodes(cl.sinks)}",
        f"internal: {_fmt_nodes(cl.internal)}",
        f"dources: {_fmt_witnessed('out-neighbor', cl.dources, cl.dource_witnesses, verbose)}",
        f"dinks: {_fmt_witnessed('in-neighbor', cl.dinks, cl.dink_witnesses, verbose)}",
    ]


def _seed(args, doc: NetworkDocument | None = None) -> int:
    if args.seed is not None:
        return args.seed
    if doc is not None and doc.seed is not None:
        return doc.seed
    return DEFAULT_SEED


def _emit(args, report: Report, lines: list[str]) -> None:
    if args.json:
        print(report.dumps())
    else:
        print("\n".join(lines))


def cmd_classify(args) -> int:
    doc = load_document(args.file)
    pattern = doc.pattern()
    cl = classify(pattern)
    report = Report(
        network=doc.name,
        classification=classification_to_dict(cl, args.verbose),
        bounds=cardinality_bounds(pattern),
    )
    lines = [f"network: {doc.name} (n={pattern.n}, {len(pattern.edges)} edges)"]
    lines += _classification_lines(cl, args.verbose)
    lo, hi = report.bounds
    lines.append(f"valid EMP cardinality bounds: {lo}..{hi}")
    _emit(args, report, lines)
    return EXIT_OK


def cmd_check(args) -> int:
    doc = load_document(args.file)
    if doc.emp is None:
        raise DocumentError(f"{args.file}: document has no 'emp' to check")
    pattern = doc.pattern()
    seed = _seed(args, doc)
    verdict = validate_emp(pattern, doc.emp, OracleConfig(args.trials, seed))
    violations = [str(v) for v in necessary_check(pattern, doc.emp)]
    report = Report(
        network=doc.name,
        classification=classification_to_dict(classify(pattern), args.verbose),
        violations=violations,
        verdict=verdict_to_dict(verdict),
        bounds=cardinality_bounds(pattern),
        provenance={"seed": seed, "trials": args.trials},
    )
    lines = [
        f"network: {doc.name}",
        f"EMP: {doc.emp} (cardinality {doc.emp.cardinality})",
        f"violations: {', '.join(violations) if violations else 'none'}",
        f"verdict: {verdict.describe()}",
    ]
    _emit(args, report, lines)
    return EXIT_OK if verdict.identifiable else EXIT_NOT_IDENTIFIABLE


def cmd_search(args) -> int:
    doc = load_document(args.file)
    pattern = doc.pattern()
    seed = _seed(args, doc)
    result = find_minimal_emp(
        pattern,
        OracleConfig(args.trials, seed),
        max_candidates=args.budget,
        time_budget=args.time_budget,
    )
    report = Report(
        network=doc.name,
        classification=classification_to_dict(classify(pattern), args.verbose),
        bounds=cardinality_bounds(pattern),
        search=search_to_dict(result),
        provenance={"seed": seed, "trials": args.trials, "budget": args.budget},
    )
    lo, hi = report.bounds
    lines = [f"network: {doc.name}", f"cardinality bounds: {lo}..{hi}"]
    if result.emp is None:
        lines.append(f"no valid EMP found ({result.explored} candidates explored, budget exhausted)")
    else:
        status = "proven minimal" if result.proven_minimal else "not proven minimal"
        lines.append(f"EMP: {result.emp} (cardinality {result.emp.cardinality}, {status})")
        lines.append(f"explored: {result.explored} candidates")
    _emit(args, report, lines)
    if result.budget_exhausted:
        return EXIT_BUDGET
    return EXIT_OK if result.emp is not None else EXIT_NOT_IDENTIFIABLE


def cmd_repro(args) -> int:
    seed = DEFAULT_SEED if args.seed is None else args.seed
    a = load_document(args.example_a) if args.example_a else None
    b = load_document(args.example_b) if args.example_b else None
    results = run_repro(seed=seed, trials=args.trials, example_a=a, example_b=b)
    report = Report(
        network="examples",
        checks=[{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
        provenance={"seed": seed, "trials": args.trials},
    )
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}" for r in results]
    n_pass = sum(r.passed for r in results)
    lines.append(f"{n_pass}/{len(results)} checks passed")
    _emit(args, report, lines)
    return EXIT_OK if n_pass == len(results) else EXIT_NOT_IDENTIFIABLE


def cmd_export_dot(args) -> int:
    doc = load_document(args.file)
    sys.stdout.write(to_dot(doc.pattern(), doc.name))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON report object")
    common.add_argument("--verbose", action="store_true", help="list every dource/dink witness")

    def oracle(trials: int = 3) -> argparse.ArgumentParser:
        # fresh parent per subcommand; argparse shares parent actions, defaults included
        o = argparse.ArgumentParser(add_help=False)
        o.add_argument("--trials", type=int, default=trials, help=f"random points per rank test (default {trials})")
        o.add_argument("--seed", type=int, default=None, help=f"random seed (default: document seed or {DEFAULT_SEED})")
        return o

    p = argparse.ArgumentParser(prog="netident", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", parents=[common], help="sources, sinks, dources and dinks")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("check", parents=[common, oracle()], help="validate the document's EMP")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("search", parents=[common, oracle(2)], help="find a minimal valid EMP")
    s.add_argument("file")
    s.add_argument("--budget", type=int, default=None, help="maximum number of candidates to test")
    s.add_argument("--time-budget", type=float, default=None, help="wall-clock limit in seconds")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("repro", parents=[common, oracle()], help="re-run the worked-example checks")
    s.add_argument("--example-a", help="override the built-in Example A document")
    s.add_argument("--example-b", help="override the built-in Example B document")
    s.set_defaults(func=cmd_repro)

    s = sub.add_parser("export-dot", help="Graphviz rendering with node classes styled")
    s.add_argument("file")
    s.set_defaults(func=cmd_export_dot)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "trials", 1) < 1:
        print("error: --trials must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
