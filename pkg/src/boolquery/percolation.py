"""Percolation functions on multigraphs and square-crossing estimators.

Edge i of the edge list is bit i of the percolation function. Monte-Carlo
sampling uses numpy's Philox generator. Samples are drawn in blocks of
``BLOCK`` configurations, block k from ``SeedSequence([seed, k])``; shards
take contiguous runs of blocks, so an estimate depends only on (seed,
samples) and never on the shard count.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .core import DEFAULT_ARITY_CAP, BooleanFunction, CapExceeded

BLOCK = 1024


@dataclass(frozen=True)
class Multigraph:
    vertices: int
    edges: tuple[tuple[int, int], ...]
    A: frozenset[int]
    B: frozenset[int]
    labels: tuple = field(default=(), compare=False)

    def __post_init__(self):
        for u, v in self.edges:
            if not (0 <= u < self.vertices and 0 <= v < self.vertices):
                raise ValueError(f"edge ({u},{v}) out of range")
        if not self.A or not self.B:
            raise ValueError("terminal sets must be nonempty")
        if any(not 0 <= v < self.vertices for v in self.A | self.B):
            raise ValueError("terminal out of range")

    @classmethod
    def build(cls, vertices: int, edges: Sequence[Sequence[int]], A, B, labels=()) -> "Multigraph":
        return cls(vertices, tuple((int(u), int(v)) for u, v in edges), frozenset(A), frozenset(B), tuple(labels))

    @classmethod
    def load(cls, path) -> "Multigraph":
        d = json.loads(Path(path).read_text())
        return cls.build(d["vertices"], d["edges"], d["A"], d["B"])

    def dumps(self) -> str:
        return json.dumps(
            {"vertices": self.vertices, "edges": [list(e) for e in self.edges], "A": sorted(self.A), "B": sorted(self.B)}
        )

    @property
    def m(self) -> int:
        return len(self.edges)


def grid_graph(m: int) -> Multigraph:
    """Square [0, m+1] x [0, m]; A the left column, B the right column.

    Horizontal edges come first, row by row, then vertical edges.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    W, H = m + 2, m + 1

    def vid(x, y):
        return y * W + x

    edges = []
    for y in range(H):
        for x in range(W - 1):
            edges.append((vid(x, y), vid(x + 1, y)))
    for x in range(W):
        for y in range(H - 1):
            edges.append((vid(x, y), vid(x, y + 1)))
    labels = [(x, y) for y in range(H) for x in range(W)]
    A = [vid(0, y) for y in range(H)]
    B = [vid(W - 1, y) for y in range(H)]
    return Multigraph.build(W * H, edges, A, B, labels)


def _omega(g: Multigraph, omega) -> list[int]:
    om = [int(b) for b in omega]
    if len(om) != g.m:
        raise ValueError(f"configuration has length {len(om)}, graph has {g.m} edges")
    return om


def _bits(idx: int, m: int) -> list[int]:
    return [(idx >> i) & 1 for i in range(m)]


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _components(g: Multigraph, om: Sequence[int]) -> _DSU:
    d = _DSU(g.vertices)
    for (u, v), o in zip(g.edges, om):
        if o:
            d.union(u, v)
    return d


def _connected(g: Multigraph, om: Sequence[int]) -> bool:
    if g.A & g.B:
        return True
    d = _components(g, om)
    roots = {d.find(a) for a in g.A}
    return any(d.find(b) in roots for b in g.B)


def connected(g: Multigraph, omega) -> bool:
    return _connected(g, _omega(g, omega))


def perc_function(g: Multigraph, cap: int | None = None) -> BooleanFunction:
    cap = DEFAULT_ARITY_CAP if cap is None else cap
    if g.m > cap:
        raise CapExceeded(f"{g.m} edges exceed the truth-table cap {cap}")
    return BooleanFunction.from_table([int(_connected(g, _bits(i, g.m))) for i in range(1 << g.m)], cap=cap)


def _shortest_open_path(g: Multigraph, om: Sequence[int]) -> int:
    adj = [[] for _ in range(g.vertices)]
    for (u, v), o in zip(g.edges, om):
        if o:
            adj[u].append(v)
            adj[v].append(u)
    dist = {a: 0 for a in g.A}
    dq = deque(g.A)
    while dq:
        u = dq.popleft()
        if u in g.B:
            return dist[u]
        for v in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                dq.append(v)
    raise ValueError("no open path")


def max_flow_unit(n: int, arcs: list[tuple[int, int]], s: int, t: int) -> int:
    """Edmonds-Karp on an undirected multigraph with unit capacities."""
    # each undirected edge becomes a pair of opposite arcs of capacity 1
    head, cap, adj = [], [], [[] for _ in range(n)]
    for u, v in arcs:
        for a, b in ((u, v), (v, u)):
            adj[a].append(len(head))
            head.append(b)
            cap.append(1)
    flow = 0
    while True:
        prev = [-1] * n
        prev[s] = -2
        dq = deque([s])
        while dq and prev[t] == -1:
            u = dq.popleft()
            for e in adj[u]:
                if cap[e] > 0 and prev[head[e]] == -1:
                    prev[head[e]] = e
                    dq.append(head[e])
        if prev[t] == -1:
            return flow
        v = t
        while v != s:
            e = prev[v]
            cap[e] -= 1
            cap[e ^ 1] += 1
            v = head[e ^ 1]
        flow += 1


def _min_cut(g: Multigraph, om: Sequence[int]) -> int:
    d = _components(g, om)
    comp = {}
    for v in range(g.vertices):
        comp.setdefault(d.find(v), len(comp))
    S, T = len(comp), len(comp) + 1
    arcs = []
    for (u, v), o in zip(g.edges, om):
        cu, cv = comp[d.find(u)], comp[d.find(v)]
        if not o and cu != cv:
            arcs.append((cu, cv))
    big = g.m + 1
    for a in {comp[d.find(a)] for a in g.A}:
        arcs.extend([(S, a)] * big)
    for b in {comp[d.find(b)] for b in g.B}:
        arcs.extend([(b, T)] * big)
    return max_flow_unit(len(comp) + 2, arcs, S, T)


def witness_at(g: Multigraph, omega) -> int:
    """Shortest open crossing if connected, else the fewest closed edges separating A from B."""
    om = _omega(g, omega)
    if _connected(g, om):
        return _shortest_open_path(g, om)
    return _min_cut(g, om)


def pivotal_count(g: Multigraph, omega) -> int:
    om = _omega(g, omega)
    base = _connected(g, om)
    count = 0
    for i in range(g.m):
        om[i] ^= 1
        count += _connected(g, om) != base
        om[i] ^= 1
    return count


# ------------------------------------------------------------- exploration


def _explore(g: Multigraph, reveal: Callable[[int], int]) -> tuple[int, int]:
    """Explore open clusters of the A vertices, revealing incident edges in a
    fixed order, until the crossing event is decided. Returns (value, count)."""
    state = [None] * g.m  # None unrevealed, else 0/1
    inc = [[] for _ in range(g.vertices)]
    for i, (u, v) in enumerate(g.edges):
        inc[u].append(i)
        inc[v].append(i)
    revealed = 0

    def decided():
        if _connected(g, [1 if s == 1 else 0 for s in state]):
            return 1
        if not _connected(g, [0 if s == 0 else 1 for s in state]):
            return 0
        return None

    val = decided()
    if val is not None:
        return val, 0
    seen = set()
    for a in sorted(g.A):
        if a in seen:
            continue
        seen.add(a)
        stack = [a]
        while stack:
            u = stack.pop()
            for e in inc[u]:
                if state[e] is not None:
                    continue
                state[e] = reveal(e)
                revealed += 1
                val = decided()
                if val is not None:
                    return val, revealed
                if state[e]:
                    x, y = g.edges[e]
                    w = y if x == u else x
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
    raise AssertionError("exploration ended undecided")


def explore_count(g: Multigraph, omega) -> int:
    om = _omega(g, omega)
    return _explore(g, lambda e: om[e])[1]


def exploration_tree(g: Multigraph):
    """The exploration algorithm as an explicit decision tree (small graphs only)."""
    from .dtree import Leaf, Node

    def build(known: dict[int, int]):
        # replay the exploration; the first unknown edge becomes a query node
        class Need(Exception):
            pass

        def reveal(e):
            if e in known:
                return known[e]
            raise Need(e)

        try:
            val, _ = _explore(g, reveal)
            return Leaf(val)
        except Need as need:
            e = need.args[0]
            return Node(e, build({**known, e: 0}), build({**known, e: 1}))

    return build({})


# ------------------------------------------------------------- Monte Carlo


@dataclass(frozen=True)
class McEstimate:
    mean: float
    stderr: float
    samples: int
    seed: int
    minimum: float = math.nan
    maximum: float = math.nan


QUANTITIES = ("crossing", "sensitivity", "witness", "explore")


def _evaluate(g: Multigraph, quantity: str, om: list[int]) -> int:
    if quantity == "crossing":
        return int(_connected(g, om))
    if quantity == "sensitivity":
        return pivotal_count(g, om)
    if quantity == "witness":
        return witness_at(g, om)
    if quantity == "explore":
        return explore_count(g, om)
    raise ValueError(f"unknown quantity {quantity!r}; choose from {QUANTITIES}")


def _block(g: Multigraph, p: float, quantity: str, seed: int, k: int, count: int) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, k])))
    omegas = rng.random((BLOCK, g.m)) < p
    out = np.empty(count, dtype=np.int64)
    for j in range(count):
        out[j] = _evaluate(g, quantity, omegas[j].astype(np.int64).tolist())
    return out


def mc_values(g: Multigraph, p: float, quantity: str, samples: int, seed: int, shards: int = 1) -> np.ndarray:
    """Per-sample values, in sample order."""
    if samples < 1:
        raise ValueError("samples must be positive")
    if quantity not in QUANTITIES:
        raise ValueError(f"unknown quantity {quantity!r}; choose from {QUANTITIES}")
    nblocks = -(-samples // BLOCK)
    shards = max(1, min(int(shards), nblocks))
    bounds = [round(s * nblocks / shards) for s in range(shards + 1)]
    parts = []
    for s in range(shards):
        # shards are independent and could run in parallel; they run in order here
        for k in range(bounds[s], bounds[s + 1]):
            count = min(BLOCK, samples - k * BLOCK)
            parts.append(_block(g, p, quantity, seed, k, count))
    return np.concatenate(parts)


def mc_estimate(g: Multigraph, p: float, quantity: str, samples: int, seed: int, shards: int = 1) -> McEstimate:
    vals = mc_values(g, p, quantity, samples, seed, shards)
    n = len(vals)
    # integer sums keep the mean independent of summation order
    s1 = int(vals.sum())
    s2 = int((vals * vals).sum())
    mean = s1 / n
    var = (s2 - s1 * s1 / n) / (n - 1) if n > 1 else 0.0
    return McEstimate(mean, math.sqrt(max(var, 0.0) / n), n, seed, float(vals.min()), float(vals.max()))


def explore_cost(g: Multigraph, p: float, samples: int, seed: int, shards: int = 1) -> McEstimate:
    """Revealed-edge count of the left-cluster exploration, averaged over samples."""
    return mc_estimate(g, p, "explore", samples, seed, shards)
