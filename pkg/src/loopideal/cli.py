"""Command-line front end.

Exit codes: 0 success, 1 mathematical negative, 2 input error,
3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional, TextIO

from . import covers, fixtures, graphs, invariants, linquot, reestype
from .graphs import GraphError, LoopGraph

SCHEMA_VERSION = 1
COMMANDS = ("family", "edge-ideal", "linquot", "invariants", "covers", "lineartype",
            "paper-suite")

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    family: Optional[str] = None
    graph: Optional[str] = None
    strategy: str = "auto"
    dmax: int = 2
    characteristic: int = 2
    format: str = "text"
    budget: int = linquot.DEFAULT_BUDGET


def _load_graph(config: RunConfig) -> LoopGraph:
    if (config.family is None) == (config.graph is None):
        raise InputError("give exactly one of --family or --graph")
    try:
        if config.family is not None:
            return graphs.parse_family(config.family)
        with open(config.graph, encoding="utf-8") as fh:
            return graphs.loads_graph(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read graph file: {exc}") from None
    except GraphError as exc:
        raise InputError(str(exc)) from None


def _describe(g: LoopGraph) -> dict:
    out = g.to_dict()
    fam = g.family_view()
    if fam is not None:
        out["family"] = {
            "m": fam.m,
            "stars": list(fam.star_sizes),
            "loops_in_core": fam.loops_in_core(),
        }
    return out


def _cmd_family(g: LoopGraph, config: RunConfig):
    data = _describe(g)
    lines = [f"n = {g.n}",
             "edges: " + " ".join(f"{i}-{j}" for i, j in sorted(g.edges)),
             "loops: " + (" ".join(map(str, sorted(g.loops))) or "none")]
    if "family" in data:
        fam = data["family"]
        lines.append(f"family: m = {fam['m']}, stars = {fam['stars']}, "
                     f"loops in core: {'yes' if fam['loops_in_core'] else 'no'}")
    return EXIT_OK, data, lines


def _cmd_edge_ideal(g: LoopGraph, config: RunConfig):
    ideal, ordered = graphs.edge_ideal(g)
    data = {"ideal": str(ideal), "ordered": [str(u) for u in ordered],
            "generators": len(ideal.gens)}
    lines = [f"I = {ideal}", "order: " + ", ".join(data["ordered"]),
             f"|G(I)| = {len(ideal.gens)}"]
    return EXIT_OK, data, lines


def _cmd_linquot(g: LoopGraph, config: RunConfig):
    ideal, ordered = graphs.edge_ideal(g)
    strategy = config.strategy
    if strategy == "auto":
        strategy = "exhaustive" if len(ideal.gens) <= linquot.EXHAUSTIVE_CAP else "backtracking"
    cert = None
    if ideal.gens:
        # the listing order of the generators goes first; search only if it fails
        try:
            cert = linquot.verify_order(ordered)
            strategy = "listed order"
        except (linquot.OrderFailure, ValueError):
            cert = None
    if cert is None:
        cert = linquot.find_order(ideal, strategy, config.budget)
    if cert is None:
        msg = f"no linear-quotient order exists ({strategy})"
        return EXIT_NEGATIVE, {"linear_quotients": False, "strategy": strategy}, [msg]
    data = {"linear_quotients": True, "strategy": strategy,
            "generators": [str(u) for u in cert.gens], **cert.to_dict()}
    lines = ["linear quotients: yes (" + strategy + ")",
             "order: " + ", ".join(data["generators"])]
    for j, step in enumerate(cert.step_generators, start=2):
        lines.append(f"  step {j}: (" + ", ".join(f"X{v}" for v in sorted(step)) + ")")
    lines.append(f"q = {cert.q}")
    return EXIT_OK, data, lines


def _cmd_invariants(g: LoopGraph, config: RunConfig):
    ideal, _ = graphs.edge_ideal(g)
    reports = {}
    fam = g.family_view()
    if fam is not None and fam.loops_in_core() and all(fam.star_sizes):
        target = fam if fam.loop_vertices else fam.base
        reports["formula"] = invariants.invariants_by_formula(target)
    cert = None
    if not ideal.is_zero():
        cert = linquot.find_order(ideal, config.strategy, config.budget)
    if cert is not None or ideal.is_zero():
        reports["certificate"] = invariants.invariants_by_certificate(ideal, cert)
    table = None
    if len(ideal.gens) <= invariants.TAYLOR_CAP and not ideal.is_zero():
        table = invariants.betti_oracle(ideal, config.characteristic)
        reports["betti-oracle"] = invariants.invariants_from_betti(table, ideal)
    data = {name: r.to_dict() for name, r in reports.items()}
    if table is not None:
        data["betti"] = table.to_dict()
    values = {r.values() for r in reports.values()}
    data["routes_agree"] = len(values) <= 1
    lines = []
    for name, r in reports.items():
        lines.append(f"{name:>13}: dim {r.dim}  pd {r.pd}  depth {r.depth}  reg {r.reg}")
    if table is not None:
        lines.append(f"Betti table (char {table.characteristic}):")
        lines.extend("  " + line for line in table.format().splitlines())
    if not data["routes_agree"]:
        lines.append("routes disagree: formula value and computed value differ")
    return EXIT_OK, data, lines


def _cmd_covers(g: LoopGraph, config: RunConfig):
    report = covers.cover_ideal(g)
    data = report.to_dict()
    lines = [f"I_c = {report.ideal}",
             "minimal vertex covers: " + " ".join("{" + ",".join(map(str, sorted(c))) + "}"
                                                  for c in report.covers),
             f"alpha0 = {report.alpha0}", f"h = {report.h}"]
    try:
        closed = covers.closed_form_cover_ideal(covers.describe(g))
    except covers.UnsupportedCase:
        closed = None
    if closed is not None:
        data["closed_form_agrees"] = closed == report.ideal
        lines.append("closed form: " + ("agrees" if closed == report.ideal else f"differs {closed}"))
    return EXIT_OK, data, lines


def _cmd_lineartype(g: LoopGraph, config: RunConfig):
    ideal = covers.cover_ideal(g).ideal
    verdict = reestype.is_linear_type_upto(ideal, config.dmax)
    data = {"ideal": str(ideal), **verdict.to_dict()}
    lines = [f"I_c = {ideal}", verdict.label,
             f"Groebner basis size {verdict.basis_size}, kernel elements checked {verdict.checked}",
             f"leading terms f_ij*T_j: {'yes' if verdict.leading_contract else 'no'}",
             f"initial ideal inside (f_ij*T_j): {'yes' if verdict.initial_in_H else 'no'}"]
    return (EXIT_OK if verdict.verified else EXIT_NEGATIVE), data, lines


def _cmd_paper_suite(config: RunConfig, anchors=None):
    results = fixtures.paper_suite(anchors)
    data = {"results": [{"anchor": r.name, "passed": r.passed, "expected": r.expected,
                         "got": r.got} for r in results]}
    lines = []
    for r in results:
        lines.append(f"{'PASS' if r.passed else 'FAIL'} {r.name}")
        if not r.passed:
            lines.append(f"     expected {r.expected}")
            lines.append(f"     got      {r.got}")
    failed = [r.name for r in results if not r.passed]
    lines.append(f"{len(results) - len(failed)}/{len(results)} anchors pass")
    return (EXIT_NEGATIVE if failed else EXIT_OK), data, lines


HANDLERS = {
    "family": _cmd_family,
    "edge-ideal": _cmd_edge_ideal,
    "linquot": _cmd_linquot,
    "invariants": _cmd_invariants,
    "covers": _cmd_covers,
    "lineartype": _cmd_lineartype,
}


def _emit(config: RunConfig, code: int, data: dict, lines: list[str], out: TextIO) -> None:
    if config.format == "structured":
        doc = {"schema_version": SCHEMA_VERSION, "command": config.command,
               "input": config.family or config.graph, "exit_code": code, "result": data}
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        out.write("\n".join(lines) + "\n")


def run(config: RunConfig, out: Optional[TextIO] = None, anchors=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        if config.command == "paper-suite":
            code, data, lines = _cmd_paper_suite(config, anchors)
        else:
            g = _load_graph(config)
            code, data, lines = HANDLERS[config.command](g, config)
    except InputError as exc:
        code, data, lines = EXIT_INPUT, {"error": str(exc)}, [f"error: {exc}"]
    except linquot.BudgetExhausted as exc:
        code, data, lines = EXIT_BUDGET, {"error": str(exc)}, [f"budget exhausted: {exc}"]
    except ValueError as exc:
        # size caps and inapplicable inputs
        code, data, lines = EXIT_INPUT, {"error": str(exc)}, [f"error: {exc}"]
    _emit(config, code, data, lines, out)
    return code


def _default_budget() -> int:
    raw = os.environ.get("LOOPIDEAL_BUDGET")
    if raw is None:
        return linquot.DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"LOOPIDEAL_BUDGET must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loopideal",
        description="Edge ideals of graphs with loops: linear quotients, invariants, "
                    "cover ideals and linear type.",
    )
    parser.add_argument("command", choices=COMMANDS)
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--family", help='family DSL, e.g. "H(m=4; stars=1,3,1,2) + loops(3)"')
    source.add_argument("--graph", help="JSON graph file {n, edges, loops}")
    parser.add_argument("--strategy", choices=("auto", "exhaustive", "backtracking"),
                        default="auto")
    parser.add_argument("--dmax", type=int, default=2, help="T-degree cap for lineartype")
    parser.add_argument("--char", dest="characteristic", type=int, default=2,
                        help="prime field characteristic for Betti numbers")
    parser.add_argument("--format", choices=("text", "structured"), default="text")
    parser.add_argument("--budget", type=int, default=None,
                        help="node budget for order search (env LOOPIDEAL_BUDGET)")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        budget = args.budget if args.budget is not None else _default_budget()
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    config = RunConfig(
        command=args.command,
        family=args.family,
        graph=args.graph,
        strategy=args.strategy,
        dmax=args.dmax,
        characteristic=args.characteristic,
        format=args.format,
        budget=budget,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
