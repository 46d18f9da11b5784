"""Two-agent rendezvous: label tapes, the 3i^2 bit scheduler, round simulator.

Each agent derives an infinite periodic bit tape from its label and processes
bit i for exactly 3 * i**2 rounds.  A 1-bit in the j-th tape segment walks the
maximal feasible prefix of the j-th path of the global order, waits at its
end, and walks back; a 0-bit waits in place.  Agents start and end every bit
at their starting node.

The simulator is synchronous.  Meetings are detected at round boundaries only;
agents crossing the same edge in opposite directions do not meet.  A dormant
(not yet woken) agent sits at its start node and can be met there.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import islice
from typing import Callable, Iterator, List, Optional, Tuple

from .errors import NegativeWait, PreconditionError, RoundBudgetExceeded
from .path_algebra import EnumMode, Path, global_paths
from .port_graph import NodeId, PortGraph

RvTraceRow = Tuple[int, int, int, NodeId, str, int, int, int, int]
# round, agent, awake, node, action, port, bit_index, bit_value, segment_index

RV_TRACE_HEADER = (
    "round", "agent", "awake", "node", "action", "port",
    "bit_index", "bit_value", "segment_index",
)


def trans(label: int) -> Tuple[int, ...]:
    """Self-delimiting bit block of a label: each binary digit doubled, then 01."""
    if label < 1:
        raise ValueError("labels are positive integers")
    bits: List[int] = []
    for ch in bin(label)[2:]:
        b = int(ch)
        bits += [b, b]
    return tuple(bits) + (0, 1)


def tape_bit(label: int, i: int) -> int:
    """i-th bit (1-based) of the infinite periodic tape of a label."""
    seg = trans(label)
    return seg[(i - 1) % len(seg)]


def alloc(i: int) -> int:
    """Rounds allocated to the i-th tape bit: 3 * i**2."""
    if i < 1:
        raise ValueError("bit indices start at 1")
    return 3 * i * i


def bound_time(n: int) -> int:
    """Total rounds of the first n bits: n(n+1)(2n+1)/2, exactly sum of 3*j**2."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return n * (n + 1) * (2 * n + 1) // 2


class PathBook:
    """Shared 1-based cache over the global path order."""

    def __init__(self, mode: EnumMode = EnumMode.FIXED):
        self._iter = global_paths(mode)
        self._cache: List[Path] = []

    def get(self, j: int) -> Path:
        while len(self._cache) < j:
            self._cache.append(next(self._iter))
        return self._cache[j - 1]


Action = Tuple[str, int]  # ("move", port) or ("wait", 0)


@dataclass
class BitPlan:
    bit_index: int
    bit_value: int
    segment_index: int
    path: Path
    actions: List[Action] = field(default_factory=list)  # exactly alloc(bit_index) long


def _bit_actions(
    g: PortGraph, home: NodeId, bit_index: int, bit_value: int, path: Path
) -> Iterator[Action]:
    """The per-round actions of one bit, starting and ending at home."""
    duration = alloc(bit_index)
    if bit_value == 0:
        for _ in range(duration):
            yield ("wait", 0)
        return
    pos = home
    entries: List[int] = []
    for p in path:
        if not g.degree(pos).has_port(p):
            break
        pos, q = g.neighbor(pos, p)
        entries.append(q)
        yield ("move", p)
    pad = duration - 2 * len(entries)
    if pad < 0:
        raise NegativeWait(
            f"bit {bit_index} (duration {duration}) cannot fit path {path}"
        )
    for _ in range(pad):
        yield ("wait", 0)
    for q in reversed(entries):
        yield ("move", q)


def plan_bit(
    i: int,
    bit: int,
    g: PortGraph,
    home: NodeId,
    mode: EnumMode = EnumMode.FIXED,
    period: int = 1,
    book: Optional[PathBook] = None,
) -> BitPlan:
    """Concrete action list for the i-th bit; the bit lies in segment
    j = (i-1)//period + 1 and a 1-bit walks the j-th global path."""
    j = (i - 1) // period + 1
    book = book or PathBook(mode)
    path = book.get(j)
    actions = list(_bit_actions(g, home, i, bit, path))
    assert len(actions) == alloc(i)
    return BitPlan(bit_index=i, bit_value=bit, segment_index=j, path=path, actions=actions)


def agent_rounds(
    g: PortGraph,
    home: NodeId,
    label: int,
    mode: EnumMode = EnumMode.FIXED,
    book: Optional[PathBook] = None,
) -> Iterator[Tuple[NodeId, str, int, int, int, int]]:
    """Per-round stream (node_after, action, port, bit_index, bit_value, segment)."""
    seg = trans(label)
    s = len(seg)
    book = book or PathBook(mode)
    pos = home
    i = 0
    while True:
        i += 1
        bit = seg[(i - 1) % s]
        j = (i - 1) // s + 1
        for action, port in _bit_actions(g, home, i, bit, book.get(j)):
            if action == "move":
                pos, _ = g.neighbor(pos, port)
            yield (pos, action, port, i, bit, j)


def _move_events(
    g: PortGraph,
    home: NodeId,
    label: int,
    mode: EnumMode,
    book: Optional[PathBook] = None,
) -> Iterator[Tuple[int, NodeId]]:
    """Only the rounds where the agent changes position: (local round, new node).

    Waits are skipped in O(1); positions are constant between yields.
    """
    seg = trans(label)
    s = len(seg)
    book = book or PathBook(mode)
    pos = home
    r = 0
    i = 0
    while True:
        i += 1
        bit = seg[(i - 1) % s]
        duration = alloc(i)
        if bit == 0:
            r += duration
            continue
        path = book.get((i - 1) // s + 1)
        entries: List[int] = []
        for p in path:
            if not g.degree(pos).has_port(p):
                break
            pos, q = g.neighbor(pos, p)
            entries.append(q)
            r += 1
            yield (r, pos)
        pad = duration - 2 * len(entries)
        if pad < 0:
            raise NegativeWait(f"bit {i} cannot fit path {path}")
        r += pad
        for q in reversed(entries):
            pos, _ = g.neighbor(pos, q)
            r += 1
            yield (r, pos)


@dataclass
class RvConfig:
    delay: int = 0  # wake-up offset of agent 2 after agent 1
    max_rounds: int = 10 ** 8
    mode: EnumMode = EnumMode.FIXED
    trace: Optional[Callable[[RvTraceRow], None]] = None


@dataclass
class RvResult:
    met: bool
    meeting_round: Optional[int] = None  # rounds since the earlier wake-up
    meeting_node: Optional[NodeId] = None


def run_urv(
    g: PortGraph,
    start1: Tuple[NodeId, int],
    start2: Tuple[NodeId, int],
    cfg: Optional[RvConfig] = None,
) -> RvResult:
    """Simulate both agents until they are co-located at a round boundary.

    Agent 1 wakes at round 1; agent 2 stays dormant at its start node through
    round cfg.delay.  Raises RoundBudgetExceeded if no meeting happens within
    cfg.max_rounds.
    """
    cfg = cfg or RvConfig()
    (v1, l1), (v2, l2) = start1, start2
    if v1 == v2:
        raise PreconditionError("agents must start at distinct nodes")
    if l1 == l2:
        raise PreconditionError("agents must have distinct labels")
    if cfg.delay < 0:
        raise PreconditionError("delay must be >= 0; swap the agents instead")
    g.degree(v1)
    g.degree(v2)
    if cfg.trace is not None:
        return _run_traced(g, start1, start2, cfg)

    book = PathBook(cfg.mode)
    ev1 = _move_events(g, v1, l1, cfg.mode, book)
    ev2 = _move_events(g, v2, l2, cfg.mode, book)
    pos1, pos2 = v1, v2
    next1 = next(ev1)
    next2 = next(ev2)
    off2 = cfg.delay
    while True:
        r = min(next1[0], next2[0] + off2)
        if r > cfg.max_rounds:
            raise RoundBudgetExceeded(f"no meeting within {cfg.max_rounds} rounds")
        while next1[0] == r:
            pos1 = next1[1]
            next1 = next(ev1)
        while next2[0] + off2 == r:
            pos2 = next2[1]
            next2 = next(ev2)
        if pos1 == pos2:
            return RvResult(met=True, meeting_round=r, meeting_node=pos1)


def _run_traced(
    g: PortGraph,
    start1: Tuple[NodeId, int],
    start2: Tuple[NodeId, int],
    cfg: RvConfig,
) -> RvResult:
    """Round-by-round simulation emitting one trace row per agent per round."""
    (v1, l1), (v2, l2) = start1, start2
    trace = cfg.trace
    book = PathBook(cfg.mode)
    rounds1 = agent_rounds(g, v1, l1, cfg.mode, book)
    rounds2 = agent_rounds(g, v2, l2, cfg.mode, book)
    pos1, pos2 = v1, v2
    for r in range(1, cfg.max_rounds + 1):
        pos1, act, port, i, b, j = next(rounds1)
        trace((r, 1, 1, pos1, act, port, i, b, j))
        if r > cfg.delay:
            pos2, act, port, i, b, j = next(rounds2)
            trace((r, 2, 1, pos2, act, port, i, b, j))
        else:
            trace((r, 2, 0, pos2, "wait", 0, 0, 0, 0))
        if pos1 == pos2:
            return RvResult(met=True, meeting_round=r, meeting_node=pos1)
    raise RoundBudgetExceeded(f"no meeting within {cfg.max_rounds} rounds")


def take_paths(n: int, mode: EnumMode = EnumMode.FIXED) -> List[Path]:
    """First n paths of the global order (convenience for tests and reports)."""
    return list(islice(global_paths(mode), n))
