"""Deterministic instance batteries used by the bench command and the tests."""

from __future__ import annotations

import random
from typing import Dict, List, Tuple

from .port_graph import (
    FiniteGraph,
    NodeId,
    _assign_ports,
    builtin,
    tree_node,
)

DEFAULT_SEED = 20240811


def random_port_graph(rng: random.Random, max_nodes: int = 8, max_degree: int = 6) -> FiniteGraph:
    """Seeded random connected port multigraph: a random tree plus a few extra
    edges (multi-edges and self-loops allowed), ports randomly permuted."""
    n = rng.randint(2, max_nodes)
    edges: List[Tuple[int, int]] = [(rng.randrange(k), k) for k in range(1, n)]
    deg = [0] * n
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    for _ in range(rng.randint(0, n)):
        a = rng.randrange(n)
        b = rng.randrange(n)
        need_a = 2 if a == b else 1
        if deg[a] + need_a > max_degree or (a != b and deg[b] + 1 > max_degree):
            continue
        edges.append((a, b))
        deg[a] += need_a
        if a != b:
            deg[b] += 1
    if max(deg) > max_degree:
        # the random tree alone can exceed the cap; rebuild as a path graph
        edges = [(k - 1, k) for k in range(1, n)]
    return _assign_ports(n, edges, rng)


def hunt_battery(count: int = 50, seed: int = DEFAULT_SEED) -> List[FiniteGraph]:
    """The seeded battery of random finite graphs for the hunt checks."""
    rng = random.Random(seed)
    return [random_port_graph(rng) for _ in range(count)]


def truncated_tree_sample_nodes() -> List[NodeId]:
    """Deterministic node sample of truncated_tree_omega(2, 12): the root, all
    twelve depth-1 children, and three shallow-port leaves.  Restricting the
    leaves keeps every pairwise weight small enough for exhaustive runs."""
    nodes = [tree_node()] + [tree_node(j) for j in range(1, 13)]
    nodes += [tree_node(1, 1), tree_node(1, 2), tree_node(2, 1)]
    return nodes


def multi_route_example() -> Tuple[FiniteGraph, NodeId, NodeId]:
    """Graph realizing the worked four-route weight computation.

    From u to v there are exactly four edge-disjoint routes, with port
    sequences (2,1,2,1), (3,10), (4,3) and (64); every other u -> v path has a
    strictly larger type value.  The character of (u, v) is (4,2) and the
    weight is 128.
    """
    adj: Dict[NodeId, Dict[int, Tuple[NodeId, int]]] = {}

    def link(a: NodeId, pa: int, b: NodeId, pb: int) -> None:
        adj.setdefault(a, {})[pa] = (b, pb)
        adj.setdefault(b, {})[pb] = (a, pa)

    # route (2,1,2,1): u -2-> x1 -1-> x2 -2-> x3 -1-> v
    link("u", 2, "x1", 2)
    link("x1", 1, "x2", 1)
    link("x2", 2, "x3", 2)
    link("x3", 1, "v", 1)
    # route (3,10): u -3-> y1 -10-> v; y1 needs ports 1..10
    link("u", 3, "y1", 1)
    link("y1", 10, "v", 2)
    for k in range(2, 10):
        link("y1", k, f"yleaf{k}", 1)
    # route (4,3): u -4-> z1 -3-> v
    link("u", 4, "z1", 1)
    link("z1", 3, "v", 3)
    link("z1", 2, "zleaf", 1)
    # route (64): the direct edge, plus filler leaves so u's ports are 1..64
    link("u", 64, "v", 4)
    for p in [1] + list(range(5, 64)):
        link("u", p, f"uleaf{p}", 1)
    g = FiniteGraph(adj)
    return g, "u", "v"


def path3_graph() -> FiniteGraph:
    """Three-node path u - x - v with ports (1,1) and (2,1)."""
    adj: Dict[NodeId, Dict[int, Tuple[NodeId, int]]] = {
        "u": {1: ("x", 1)},
        "x": {1: ("u", 1), 2: ("v", 1)},
        "v": {1: ("x", 2)},
    }
    return FiniteGraph(adj)


def low_port_edge(g: FiniteGraph) -> Tuple[NodeId, NodeId]:
    """Endpoints of the edge minimizing its larger port number.

    Used to pick rendezvous start pairs whose weights stay small, so the exact
    cumulative-time bound fits under the round cap.
    """
    best = None
    for v in g.nodes():
        for p, (u, q) in g.adjacency[v].items():
            if u == v:
                continue
            key = (max(p, q), min(p, q), v, u)
            if best is None or key < best:
                best = key
    if best is None:
        raise ValueError("graph has no non-loop edge")
    return best[2], best[3]


def far_pair(g: FiniteGraph) -> Tuple[NodeId, NodeId]:
    """First node and a BFS-farthest node from it (deterministic tie-break)."""
    from collections import deque

    ns = g.nodes()
    src = ns[0]
    dist = {src: 0}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        for (y, _q) in g.adjacency[x].values():
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return src, max(ns, key=lambda n: (dist[n], n))


def rendezvous_start_pairs(g: FiniteGraph, max_k_star: int = 33) -> List[Tuple[NodeId, NodeId]]:
    """Start pairs for the rendezvous battery.

    Always the lowest-port edge; additionally a BFS-farthest pair when its
    critical-path indices are small enough that the exact cumulative-time
    bound stays below the default round cap.
    """
    from .weight_oracle import critical_path

    pairs = [low_port_edge(g)]
    fp = far_pair(g)
    if fp != pairs[0] and fp != tuple(reversed(pairs[0])):
        _, k1 = critical_path(g, fp[0], fp[1])
        _, k2 = critical_path(g, fp[1], fp[0])
        if max(k1, k2) <= max_k_star:
            pairs.append(fp)
    return pairs


def rendezvous_graphs() -> List[Tuple[str, FiniteGraph]]:
    """The graph families of the rendezvous battery."""
    out: List[Tuple[str, FiniteGraph]] = [("two_node", builtin("two_node"))]
    for n in range(3, 7):
        out.append((f"ring:{n}", builtin("ring", [n])))
    rng = random.Random(DEFAULT_SEED + 1)
    for k in range(5):
        n = rng.randint(4, 8)
        out.append((f"random_tree[{k}]", builtin("random_tree", [n, rng.randrange(10 ** 6)])))
    out.append(("truncated_tree_omega:2,8", builtin("truncated_tree_omega", [2, 8])))
    return out


RENDEZVOUS_LABEL_PAIRS: List[Tuple[int, int]] = [
    (1, 2), (2, 1), (3, 5), (7, 11), (15, 16), (31, 32), (1, 32), (21, 13),
]

RENDEZVOUS_DELAYS: List[int] = [0, 1, 5, 17]
