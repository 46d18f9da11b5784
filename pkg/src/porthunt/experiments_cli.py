"""Command-line front end: hunts, rendezvous, oracle queries, experiments, bench.

Exit codes: 0 success, 1 failed bench check, 2 bad input (parse/unknown
node/precondition), 3 exhausted budget or cap.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

from . import battery
from .errors import (
    BadParams,
    CapExceeded,
    Disconnected,
    InvalidPorts,
    ParseError,
    PortHuntError,
    PreconditionError,
    RoundBudgetExceeded,
    StepBudgetExceeded,
    UnknownFamily,
    UnknownNode,
)
from .hunt_engine import TRACE_HEADER, HuntConfig, first_visit_times, run_uth
from .path_algebra import EnumMode, phase_types, value
from .port_graph import PortGraph, builtin, from_text, tree_node
from .rendezvous_engine import (
    RV_TRACE_HEADER,
    RvConfig,
    bound_time,
    run_urv,
    trans,
)
from .weight_oracle import character_weight, critical_path

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_BAD_INPUT = 2
EXIT_BUDGET = 3

_BAD_INPUT = (ParseError, UnknownNode, UnknownFamily, BadParams, InvalidPorts,
              Disconnected, PreconditionError)
_BUDGET = (StepBudgetExceeded, RoundBudgetExceeded, CapExceeded)


@dataclass
class ExperimentReport:
    kind: str
    instance: str
    measured: object
    oracle: object
    bound: object
    passed: bool

    def row(self) -> List[str]:
        return [self.kind, self.instance, str(self.measured), str(self.oracle),
                str(self.bound), "pass" if self.passed else "fail"]


REPORT_HEADER = ("kind", "instance", "measured", "oracle", "bound", "result")


def resolve_graph(ref: str) -> PortGraph:
    """Builtin reference ``name[:p1,p2,...]`` or a path to a graph text file."""
    name, _, params = ref.partition(":")
    if name in ("two_node", "ring", "complete", "random_tree", "tree_regular",
                "tree_omega", "truncated_tree_omega"):
        args = [int(p) for p in params.split(",")] if params else []
        return builtin(name, args)
    try:
        with open(ref, "r", encoding="utf-8") as fh:
            return from_text(fh.read())
    except FileNotFoundError:
        raise ParseError(f"no such graph file or builtin: {ref!r}") from None


def _mode(name: str) -> EnumMode:
    return EnumMode.FIXED if name == "fixed" else EnumMode.STRICT


def _open_trace(path: Optional[str], header: Sequence[str]):
    if path is None:
        return None, None
    fh = open(path, "w", newline="", encoding="utf-8")
    writer = csv.writer(fh)
    writer.writerow(header)
    return fh, writer.writerow


# --- checks shared by commands and bench -------------------------------------

def check_hunt(graph_ref: str, base: str, treasure: str, mode: str = "fixed",
               max_steps: int = 10 ** 6, cap: int = 10 ** 6,
               trace_path: Optional[str] = None) -> ExperimentReport:
    g = resolve_graph(graph_ref)
    fh, sink = _open_trace(trace_path, TRACE_HEADER)
    try:
        result = run_uth(g, base, treasure, HuntConfig(_mode(mode), max_steps, sink))
    finally:
        if fh:
            fh.close()
    instance = f"{graph_ref} {base}->{treasure} {mode}"
    if base == treasure:
        return ExperimentReport("hunt", instance, result.steps, 0, 0, result.steps == 0)
    oracle = character_weight(g, base, treasure, cap)
    bound = 2 * oracle.weight
    passed = result.steps <= bound
    if _mode(mode) is EnumMode.FIXED:
        passed = passed and result.found_phase_value == oracle.weight \
            and result.found_type == oracle.character
    return ExperimentReport("hunt", instance, result.steps, oracle.weight, bound, passed)


def check_weight(graph_ref: str, src: str, dst: str, cap: int = 10 ** 6) -> ExperimentReport:
    g = resolve_graph(graph_ref)
    r = character_weight(g, src, dst, cap)
    instance = f"{graph_ref} {src}->{dst}"
    passed = r.witness_index <= r.weight
    return ExperimentReport("weight", instance,
                            f"character={r.character} witness={r.witness} index={r.witness_index}",
                            r.weight, r.weight, passed)


def check_rv(graph_ref: str, start1: str, label1: int, start2: str, label2: int,
             delay: int = 0, mode: str = "fixed", max_rounds: int = 10 ** 8,
             cap: int = 10 ** 6, trace_path: Optional[str] = None) -> ExperimentReport:
    g = resolve_graph(graph_ref)
    fh, sink = _open_trace(trace_path, RV_TRACE_HEADER)
    try:
        result = run_urv(g, (start1, label1), (start2, label2),
                         RvConfig(delay=delay, max_rounds=max_rounds,
                                  mode=_mode(mode), trace=sink))
    finally:
        if fh:
            fh.close()
    _, k1 = critical_path(g, start1, start2, cap)
    _, k2 = critical_path(g, start2, start1, cap)
    n_hat = max(k1 * len(trans(label1)), k2 * len(trans(label2)))
    bound = delay + bound_time(n_hat)
    instance = f"{graph_ref} ({start1},{label1})x({start2},{label2}) delay={delay}"
    passed = result.met and result.meeting_round <= bound
    return ExperimentReport("rv", instance, result.meeting_round, n_hat, bound, passed)


def check_lowerbound(i: int, max_steps: int = 10 ** 7) -> ExperimentReport:
    """Adversarial treasure placement on the infinite-degree tree: among the
    root's children reached by ports i+1..2i, put the treasure at the one the
    hunt visits last and check time >= weight/4."""
    if i < 1:
        raise PreconditionError("i must be >= 1")
    g = builtin("tree_omega")
    targets = {tree_node(j): j for j in range(i + 1, 2 * i + 1)}
    visits = first_visit_times(g, tree_node(), targets, max_steps=max_steps)
    last = max(targets, key=lambda n: visits[n])
    r = targets[last]
    measured = visits[last]
    weight = 2 * r  # single edge through port r
    bound = weight / 4
    return ExperimentReport("lowerbound", f"tree_omega i={i} r={r}", measured,
                            weight, bound, measured >= bound)


def check_sleeper(graph_ref: str, start1: str, label1: int, start2: str,
                  max_rounds: int = 10 ** 8, cap: int = 10 ** 6) -> ExperimentReport:
    """Agent 2 never wakes up: the run must reduce to a hunt onto its node."""
    g = resolve_graph(graph_ref)
    other_label = label1 + 1
    result = run_urv(g, (start1, label1), (start2, other_label),
                     RvConfig(delay=max_rounds, max_rounds=max_rounds))
    oracle = character_weight(g, start1, start2, cap)
    instance = f"{graph_ref} ({start1},{label1}) -> dormant {start2}"
    passed = result.met and result.meeting_node == start2
    return ExperimentReport("sleeper", instance, result.meeting_round,
                            oracle.weight, max_rounds, passed)


def run_bench(suite_path: str, out_path: Optional[str]) -> int:
    with open(suite_path, "r", encoding="utf-8") as fh:
        suite = json.load(fh)
    checks = suite.get("checks", [])
    reports: List[ExperimentReport] = []
    for spec in checks:
        kind = spec.get("kind")
        try:
            if kind == "hunt":
                rep = check_hunt(spec["graph"], spec["base"], spec["treasure"],
                                 spec.get("mode", "fixed"),
                                 spec.get("max_steps", 10 ** 6),
                                 spec.get("cap", 10 ** 6))
            elif kind == "weight":
                rep = check_weight(spec["graph"], spec["from"], spec["to"],
                                   spec.get("cap", 10 ** 6))
            elif kind == "rv":
                rep = check_rv(spec["graph"], spec["start1"], spec["label1"],
                               spec["start2"], spec["label2"],
                               spec.get("delay", 0), spec.get("mode", "fixed"),
                               spec.get("max_rounds", 10 ** 8),
                               spec.get("cap", 10 ** 6))
            elif kind == "lowerbound":
                rep = check_lowerbound(spec["i"], spec.get("max_steps", 10 ** 7))
            elif kind == "sleeper":
                rep = check_sleeper(spec["graph"], spec["start1"], spec["label1"],
                                    spec["start2"], spec.get("max_rounds", 10 ** 8),
                                    spec.get("cap", 10 ** 6))
            else:
                rep = ExperimentReport("unknown", json.dumps(spec, sort_keys=True),
                                       "", "", "", False)
        except PortHuntError as exc:
            rep = ExperimentReport(kind or "unknown", json.dumps(spec, sort_keys=True),
                                   type(exc).__name__, "", "", False)
        reports.append(rep)
    out = open(out_path, "w", newline="", encoding="utf-8") if out_path else sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(REPORT_HEADER)
        for rep in reports:
            writer.writerow(rep.row())
    finally:
        if out_path:
            out.close()
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# --- argument parsing ---------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="porthunt",
                                     description="Treasure hunt and rendezvous on port-numbered graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hunt", help="run a treasure hunt and check the 2w bound")
    p.add_argument("--graph", required=True)
    p.add_argument("--base", required=True)
    p.add_argument("--treasure", required=True)
    p.add_argument("--mode", choices=["fixed", "strict"], default="fixed")
    p.add_argument("--max-steps", type=int, default=10 ** 6)
    p.add_argument("--cap", type=int, default=10 ** 6)
    p.add_argument("--trace")

    p = sub.add_parser("weight", help="brute-force character/weight of a node pair")
    p.add_argument("--graph", required=True)
    p.add_argument("--from", dest="src", required=True)
    p.add_argument("--to", dest="dst", required=True)
    p.add_argument("--cap", type=int, default=10 ** 6)

    p = sub.add_parser("rv", help="run a rendezvous and check the cumulative-time bound")
    p.add_argument("--graph", required=True)
    p.add_argument("--start1", required=True)
    p.add_argument("--label1", type=int, required=True)
    p.add_argument("--start2", required=True)
    p.add_argument("--label2", type=int, required=True)
    p.add_argument("--delay", type=int, default=0)
    p.add_argument("--mode", choices=["fixed", "strict"], default="fixed")
    p.add_argument("--max-rounds", type=int, default=10 ** 8)
    p.add_argument("--cap", type=int, default=10 ** 6)
    p.add_argument("--trace")

    p = sub.add_parser("lowerbound", help="adversarial hunt on the infinite-degree tree")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--max-steps", type=int, default=10 ** 7)

    p = sub.add_parser("sleeper", help="rendezvous onto a never-woken agent")
    p.add_argument("--graph", required=True)
    p.add_argument("--start1", required=True)
    p.add_argument("--label1", type=int, required=True)
    p.add_argument("--start2", required=True)
    p.add_argument("--max-rounds", type=int, default=10 ** 8)
    p.add_argument("--cap", type=int, default=10 ** 6)

    p = sub.add_parser("phase", help="print the path types of one phase value")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--mode", choices=["fixed", "strict"], default="fixed")

    p = sub.add_parser("bench", help="run a suite file and emit a report CSV")
    p.add_argument("--suite", required=True)
    p.add_argument("--out")
    return parser


def _print_report(rep: ExperimentReport) -> None:
    print(f"kind={rep.kind}")
    print(f"instance={rep.instance}")
    print(f"measured={rep.measured}")
    print(f"oracle={rep.oracle}")
    print(f"bound={rep.bound}")
    print(f"result={'pass' if rep.passed else 'fail'}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "hunt":
            rep = check_hunt(args.graph, args.base, args.treasure, args.mode,
                             args.max_steps, args.cap, args.trace)
        elif args.command == "weight":
            rep = check_weight(args.graph, args.src, args.dst, args.cap)
        elif args.command == "rv":
            rep = check_rv(args.graph, args.start1, args.label1, args.start2,
                           args.label2, args.delay, args.mode, args.max_rounds,
                           args.cap, args.trace)
        elif args.command == "lowerbound":
            rep = check_lowerbound(args.i, args.max_steps)
        elif args.command == "sleeper":
            rep = check_sleeper(args.graph, args.start1, args.label1,
                                args.start2, args.max_rounds, args.cap)
        elif args.command == "phase":
            if args.j < 2:
                raise PreconditionError("phase values start at 2")
            types = phase_types(args.j, _mode(args.mode))
            for (x, y) in types:
                print(f"({x},{y}) value={value(x, y)}")
            if not types:
                print("(none)")
            return EXIT_OK
        elif args.command == "bench":
            return run_bench(args.suite, args.out)
        else:  # pragma: no cover
            raise AssertionError(args.command)
    except _BAD_INPUT as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except _BUDGET as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    _print_report(rep)
    return EXIT_OK if rep.passed else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
