"""Treasure hunt execution: single-path traversal, per-type sweeps, full hunt.

The agent only sees ports.  It probes a port by attempting a move; a probe of
a nonexistent port costs nothing, a successful move costs one step.  The
simulator (not the agent) recognizes arrival at the treasure node.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Set, Tuple

from .errors import StepBudgetExceeded, UnknownNode
from .path_algebra import (
    EnumMode,
    Path,
    PathType,
    paths_of_type,
    types_in_order,
    value,
)
from .port_graph import NodeId, PortGraph

TraceRow = Tuple[int, int, int, int, str, int, str]
# step, phase_value, type_m, type_delta, action, port, result

TRACE_HEADER = ("step", "phase_value", "type_m", "type_delta", "action", "port", "result")


class Navigator:
    """Hides the graph behind a ports-only move interface and counts steps."""

    def __init__(
        self,
        graph: PortGraph,
        start: NodeId,
        treasure: Optional[NodeId] = None,
        max_steps: int = 10 ** 6,
        on_visit: Optional[Callable[[NodeId, int], None]] = None,
    ):
        if max_steps < 1:
            raise ValueError("max_steps must be >= 1")
        graph.degree(start)  # raises UnknownNode for a bad start
        self._graph = graph
        self._pos = start
        self._treasure = treasure
        self._on_visit = on_visit
        self.max_steps = max_steps
        self.steps = 0
        self.at_treasure = start == treasure

    def move(self, p: int) -> Optional[int]:
        """Take port p; returns the entry port, or None if p does not exist here."""
        if not self._graph.degree(self._pos).has_port(p):
            return None
        if self.steps >= self.max_steps:
            raise StepBudgetExceeded(f"step budget {self.max_steps} exhausted")
        self._pos, entry = self._graph.neighbor(self._pos, p)
        self.steps += 1
        self.at_treasure = self._pos == self._treasure
        if self._on_visit is not None:
            self._on_visit(self._pos, self.steps)
        return entry

    @property
    def position(self) -> NodeId:
        """Simulator-side peek; agent logic must not use this."""
        return self._pos


@dataclass
class TraverseOutcome:
    feasible_prefix: Path
    learned_reverse: Path
    steps_used: int
    treasure_hit: Optional[int] = None  # prefix length at first hit


@dataclass
class HuntConfig:
    mode: EnumMode = EnumMode.FIXED
    max_steps: int = 10 ** 6
    trace: Optional[Callable[[TraceRow], None]] = None


def traverse(
    nav: Navigator,
    path: Path,
    stop_at_treasure: bool = True,
    trace: Optional[Callable[[TraceRow], None]] = None,
    phase: Tuple[int, PathType] = (0, (0, 0)),
) -> TraverseOutcome:
    """Walk the maximal feasible prefix of path, then retrace back to base.

    If stop_at_treasure and the walk enters the treasure node, the agent halts
    there immediately.  Costs at most 2 * len(path) steps.
    """
    phase_value, (tm, td) = phase
    entries: List[int] = []
    taken = 0
    for p in path:
        entry = nav.move(p)
        if entry is None:
            if trace:
                trace((nav.steps, phase_value, tm, td, "probe_fail", p, "ok"))
            break
        taken += 1
        entries.append(entry)
        if trace:
            trace((nav.steps, phase_value, tm, td, "move", p, "treasure" if nav.at_treasure else "ok"))
        if stop_at_treasure and nav.at_treasure:
            return TraverseOutcome(
                feasible_prefix=path[:taken],
                learned_reverse=tuple(reversed(entries)),
                steps_used=taken,
                treasure_hit=taken,
            )
    for q in reversed(entries):
        nav.move(q)
        if trace:
            trace((nav.steps, phase_value, tm, td, "backtrack", q, "ok"))
    return TraverseOutcome(
        feasible_prefix=path[:taken],
        learned_reverse=tuple(reversed(entries)),
        steps_used=2 * taken,
    )


@dataclass
class PathsOutcome:
    steps_used: int
    treasure_prefix: Optional[Path] = None  # prefix that entered the treasure


def run_paths_procedure(
    nav: Navigator,
    m: int,
    delta: int,
    stop_at_treasure: bool = True,
    trace: Optional[Callable[[TraceRow], None]] = None,
) -> PathsOutcome:
    """Traverse every path of type (m, delta) in lexicographic order."""
    before = nav.steps
    phase = (value(m, delta), (m, delta))
    for path in paths_of_type(m, delta):
        outcome = traverse(nav, path, stop_at_treasure, trace, phase)
        if outcome.treasure_hit is not None:
            return PathsOutcome(nav.steps - before, treasure_prefix=outcome.feasible_prefix)
    return PathsOutcome(nav.steps - before)


@dataclass
class HuntResult:
    found: bool
    steps: int
    found_type: Optional[PathType] = None
    found_phase_value: Optional[int] = None
    visit_prefix: Optional[Path] = None


def run_uth(
    g: PortGraph,
    base: NodeId,
    treasure: NodeId,
    cfg: Optional[HuntConfig] = None,
) -> HuntResult:
    """Universal treasure hunt: sweep types in increasing value order until the
    treasure node is entered.  Raises StepBudgetExceeded if the cap runs out.

    Without a trace sink the per-type sweep is compressed: paths sharing an
    infeasible prefix are accounted in bulk, with step counts and the first
    treasure entry identical to the path-by-path walk.
    """
    cfg = cfg or HuntConfig()
    g.degree(treasure)  # raises UnknownNode for a bad treasure
    if base == treasure:
        return HuntResult(found=True, steps=0)
    if cfg.trace is None:
        return _run_uth_fast(g, base, treasure, cfg)
    nav = Navigator(g, base, treasure=treasure, max_steps=cfg.max_steps)
    for m, delta in types_in_order(cfg.mode):
        outcome = run_paths_procedure(nav, m, delta, stop_at_treasure=True, trace=cfg.trace)
        if outcome.treasure_prefix is not None:
            return HuntResult(
                found=True,
                steps=nav.steps,
                found_type=(m, delta),
                found_phase_value=value(m, delta),
                visit_prefix=outcome.treasure_prefix,
            )
    raise AssertionError("unreachable")


def _sweep_type_fast(
    g: PortGraph,
    base: NodeId,
    treasure: NodeId,
    m: int,
    delta: int,
    steps_before: int,
) -> Tuple[int, Optional[Path]]:
    """Steps consumed by sweeping all paths of type (m, delta), or the hit.

    Walks the feasible prefix tree once, in lexicographic order.  Each path's
    cost is twice its maximal feasible prefix; paths cut off at the same
    infeasible port are charged in bulk.  Returns (steps at first treasure
    entry, hit prefix) if the treasure is entered, else (total steps, None);
    both match the path-by-path agent exactly.
    """
    pow_m = [m ** r for r in range(delta)]
    pow_m1 = [(m - 1) ** r for r in range(delta)]
    steps = steps_before
    path: List[int] = []

    def dfs(pos: NodeId, depth: int, seen_max: bool) -> Optional[Path]:
        nonlocal steps
        remaining = delta - depth
        if remaining == 0:
            steps += 2 * delta
            return None
        low = m if (not seen_max and remaining == 1) else 1
        for q in range(low, m + 1):
            sub_seen = seen_max or q == m
            if not g.degree(pos).has_port(q):
                # every member with this prefix breaks off here: 2*depth steps each
                members = pow_m[remaining - 1] if sub_seen \
                    else pow_m[remaining - 1] - pow_m1[remaining - 1]
                steps += 2 * depth * members
                continue
            nxt, _ = g.neighbor(pos, q)
            path.append(q)
            if nxt == treasure:
                steps += depth + 1  # partial forward walk of the current path
                return tuple(path)
            hit = dfs(nxt, depth + 1, sub_seen)
            if hit is not None:
                return hit
            path.pop()
        return None

    hit = dfs(base, 0, m == 1)
    return steps, hit


def _run_uth_fast(g: PortGraph, base: NodeId, treasure: NodeId, cfg: HuntConfig) -> HuntResult:
    steps = 0
    for m, delta in types_in_order(cfg.mode):
        steps, hit = _sweep_type_fast(g, base, treasure, m, delta, steps)
        if steps > cfg.max_steps and hit is None:
            raise StepBudgetExceeded(f"step budget {cfg.max_steps} exhausted")
        if hit is not None:
            if steps > cfg.max_steps:
                raise StepBudgetExceeded(f"step budget {cfg.max_steps} exhausted")
            return HuntResult(
                found=True,
                steps=steps,
                found_type=(m, delta),
                found_phase_value=value(m, delta),
                visit_prefix=hit,
            )
    raise AssertionError("unreachable")


def first_visit_times(
    g: PortGraph,
    base: NodeId,
    targets: Iterable[NodeId],
    mode: EnumMode = EnumMode.FIXED,
    max_steps: int = 10 ** 6,
) -> Dict[NodeId, int]:
    """Step count at the first visit of each target node during a hunt sweep.

    Runs the same deterministic sweep as run_uth (with no treasure halting)
    until every target has been visited; the placement of an inert treasure
    does not alter the sweep before its first visit.
    """
    remaining: Set[NodeId] = set(targets)
    visits: Dict[NodeId, int] = {}
    if base in remaining:
        remaining.discard(base)
        visits[base] = 0
    if not remaining:
        return visits

    def note(node: NodeId, steps: int) -> None:
        if node in remaining:
            remaining.discard(node)
            visits[node] = steps

    nav = Navigator(g, base, max_steps=max_steps, on_visit=note)
    for m, delta in types_in_order(mode):
        run_paths_procedure(nav, m, delta, stop_at_treasure=False)
        if not remaining:
            return visits
    raise AssertionError("unreachable")
