"""Undirected multigraphs, named fixtures and the classical graph algorithms
the all-terminal analysis relies on.

Nodes are 0-based internally (graph files are 1-based). Edge order is the
component order of the induced all-terminal system.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import ConnectivityError, DomainError, ValidationError
from .system import BinarySystem, all_masks


@dataclass(frozen=True)
class UndirectedGraph:
    n: int
    edges: tuple[tuple[int, int], ...]
    weights: tuple[Fraction, ...] | None = None
    probs: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("a graph needs at least one node")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValidationError(f"edge ({u + 1}, {v + 1}) references a missing node")
            if u == v:
                raise ValidationError(f"self-loop at node {u + 1}")
        object.__setattr__(self, "edges", edges)
        if self.weights is not None:
            w = tuple(Fraction(x) for x in self.weights)
            if len(w) != len(edges) or any(x < 0 for x in w):
                raise ValidationError("need one non-negative weight per edge")
            object.__setattr__(self, "weights", w)
        if self.probs is not None:
            p = tuple(Fraction(x) for x in self.probs)
            if len(p) != len(edges) or any(not 0 <= x <= 1 for x in p):
                raise ValidationError("need one probability in [0, 1] per edge")
            object.__setattr__(self, "probs", p)

    @property
    def m(self) -> int:
        return len(self.edges)

    def with_weights(self, weights) -> "UndirectedGraph":
        return UndirectedGraph(self.n, self.edges, tuple(weights), self.probs)

    def with_probs(self, probs) -> "UndirectedGraph":
        return UndirectedGraph(self.n, self.edges, self.weights, tuple(probs))

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def delete_edges(self, indices: Iterable[int]) -> "UndirectedGraph":
        drop = set(indices)
        keep = [i for i in range(self.m) if i not in drop]
        return self._subset(range(self.n), keep)

    def delete_node(self, v: int) -> "UndirectedGraph":
        if self.n == 1:
            raise DomainError("cannot delete the only node")
        nodes = [x for x in range(self.n) if x != v]
        keep = [i for i, e in enumerate(self.edges) if v not in e]
        return self._subset(nodes, keep)

    def _subset(self, nodes, keep) -> "UndirectedGraph":
        relabel = {x: i for i, x in enumerate(nodes)}
        pick = lambda seq: None if seq is None else tuple(seq[i] for i in keep)
        return UndirectedGraph(
            len(relabel),
            tuple((relabel[self.edges[i][0]], relabel[self.edges[i][1]]) for i in keep),
            pick(self.weights),
            pick(self.probs),
        )


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.count = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        self.count -= 1
        return True


def component_count(graph: UndirectedGraph) -> int:
    uf = UnionFind(graph.n)
    for u, v in graph.edges:
        uf.union(u, v)
    return uf.count


def is_connected(graph: UndirectedGraph) -> bool:
    return component_count(graph) == 1


def _weights(graph: UndirectedGraph, weights) -> tuple[Fraction, ...]:
    if weights is None:
        weights = graph.weights
    if weights is None:
        return (Fraction(1),) * graph.m
    w = tuple(Fraction(x) for x in weights)
    if len(w) != graph.m:
        raise ValidationError(f"{len(w)} weights for {graph.m} edges")
    return w


def minimum_spanning_tree(graph: UndirectedGraph, weights=None) -> tuple[Fraction, list[int]]:
    """Kruskal. Returns the cost and the chosen edge indices."""
    w = _weights(graph, weights)
    uf = UnionFind(graph.n)
    chosen = []
    total = Fraction(0)
    for i in sorted(range(graph.m), key=lambda i: (w[i], i)):
        u, v = graph.edges[i]
        if uf.union(u, v):
            chosen.append(i)
            total += w[i]
    if uf.count != 1:
        raise ConnectivityError("a disconnected graph has no spanning tree")
    return total, chosen


def mst_cost(graph: UndirectedGraph, weights=None) -> Fraction:
    return minimum_spanning_tree(graph, weights)[0]


def global_mincut(graph: UndirectedGraph, weights=None) -> tuple[Fraction, tuple[int, ...]]:
    """Stoer-Wagner minimum cut with a witness set of edge indices.

    A disconnected graph has the empty cut of weight 0.
    """
    if graph.n < 2:
        raise DomainError("a global cut needs at least two nodes")
    w = _weights(graph, weights)
    n = graph.n
    W = [[Fraction(0)] * n for _ in range(n)]
    for (u, v), x in zip(graph.edges, w):
        W[u][v] += x
        W[v][u] += x
    groups = [[v] for v in range(n)]
    active = list(range(n))
    best, best_side = None, None
    while len(active) > 1:
        # maximum adjacency ordering
        start = active[0]
        added = [start]
        conn = {v: W[start][v] for v in active if v != start}
        while conn:
            nxt = max(conn, key=lambda v: (conn[v], -v))
            cut_of_phase = conn.pop(nxt)
            added.append(nxt)
            for v in conn:
                conn[v] += W[nxt][v]
        s, t = added[-2], added[-1]
        if best is None or cut_of_phase < best:
            best, best_side = cut_of_phase, list(groups[t])
        groups[s].extend(groups[t])
        for v in active:
            W[s][v] += W[t][v]
            W[v][s] = W[s][v]
        W[s][s] = Fraction(0)
        active.remove(t)
    side = set(best_side)
    witness = tuple(i for i, (u, v) in enumerate(graph.edges) if (u in side) != (v in side))
    return best, witness


def edge_connectivity(graph: UndirectedGraph) -> int:
    if graph.n < 2 or not is_connected(graph):
        return 0
    return int(global_mincut(graph, [1] * graph.m)[0])


def _bareiss_det(M: list[list[int]]) -> int:
    n = len(M)
    if n == 0:
        return 1
    M = [row[:] for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def spanning_tree_count(graph: UndirectedGraph) -> int:
    """Kirchhoff: any cofactor of the Laplacian, by fraction-free elimination."""
    n = graph.n
    L = [[0] * n for _ in range(n)]
    for u, v in graph.edges:
        L[u][u] += 1
        L[v][v] += 1
        L[u][v] -= 1
        L[v][u] -= 1
    return _bareiss_det([row[1:] for row in L[1:]])


# --------------------------------------------------------------------------
# all-terminal structure function


@dataclass(frozen=True)
class AllTerminal:
    """phi(s) = 1 iff the working edges connect every node."""

    graph: UndirectedGraph
    monotone_by_construction = True

    @property
    def n(self) -> int:
        return self.graph.m

    def evaluate(self, mask: int) -> int:
        g = self.graph
        m = g.m
        uf = UnionFind(g.n)
        for i, (u, v) in enumerate(g.edges):
            if mask >> (m - 1 - i) & 1:
                uf.union(u, v)
                if uf.count == 1:
                    return 1
        return int(uf.count == 1)

    def table(self) -> np.ndarray:
        g = self.graph
        m, n = g.m, g.n
        masks = all_masks(m)
        on = [((masks >> (m - 1 - i)) & 1).astype(bool) for i in range(m)]
        dtype = np.int8 if n < 128 else np.int32
        # min-label propagation; row v holds node v's label in every state
        lab = np.repeat(np.arange(n, dtype=dtype)[:, None], 1 << m, axis=1)
        changed = True
        while changed:
            changed = False
            for i, (u, v) in enumerate(g.edges):
                lu, lv = lab[u], lab[v]
                fix = on[i] & (lu != lv)
                if fix.any():
                    low = np.minimum(lu, lv)
                    lab[u] = np.where(fix, low, lu)
                    lab[v] = np.where(fix, low, lv)
                    changed = True
        return (lab.max(axis=0) == 0).astype(np.uint8)


def all_terminal_system(graph: UndirectedGraph, probs=None) -> BinarySystem:
    if probs is None:
        probs = graph.probs
    return BinarySystem(AllTerminal(graph), probs)


# --------------------------------------------------------------------------
# named graphs


def _need(cond: bool, msg: str):
    if not cond:
        raise DomainError(msg)


def complete(n: int) -> UndirectedGraph:
    _need(n >= 1, "complete graph needs n >= 1")
    return UndirectedGraph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def cycle(n: int) -> UndirectedGraph:
    """Elementary cycle; n = 2 gives a pair of parallel edges."""
    _need(n >= 2, "cycle needs n >= 2")
    return UndirectedGraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> UndirectedGraph:
    """Path on n nodes."""
    _need(n >= 1, "path needs n >= 1")
    return UndirectedGraph(n, tuple((i, i + 1) for i in range(n - 1)))


def star(n: int) -> UndirectedGraph:
    """K_{1,n}: centre 0 and n leaves."""
    _need(n >= 1, "star needs at least one leaf")
    return UndirectedGraph(n + 1, tuple((0, i) for i in range(1, n + 1)))


def _add_path(edges: list, start: int, end: int, length: int, next_node: int) -> int:
    prev = start
    for _ in range(length - 1):
        edges.append((prev, next_node))
        prev = next_node
        next_node += 1
    edges.append((prev, end))
    return next_node


def monma(l1: int, l2: int, l3: int) -> UndirectedGraph:
    """Nodes u=0 and v=1 joined by three internally disjoint paths of the
    given lengths. Edges run path by path, each from u towards v."""
    _need(min(l1, l2, l3) >= 1, "Monma path lengths must be >= 1")
    edges: list[tuple[int, int]] = []
    nxt = 2
    for length in (l1, l2, l3):
        nxt = _add_path(edges, 0, 1, length, nxt)
    return UndirectedGraph(nxt, tuple(edges))


def kissing_cycles(a: int, b: int) -> UndirectedGraph:
    """Two cycles sharing node 0; edges of the first cycle come first."""
    _need(a >= 2 and b >= 2, "cycle lengths must be >= 2")
    edges: list[tuple[int, int]] = []
    nxt = _add_path(edges, 0, 0, a, 1)
    nxt = _add_path(edges, 0, 0, b, nxt)
    return UndirectedGraph(nxt, tuple(edges))


def two_cycles_with_path(a: int, b: int, k: int) -> UndirectedGraph:
    """Cycles of lengths a and b joined by a path of k edges.

    Edge order: first cycle, second cycle, then the connecting path.
    """
    _need(a >= 2 and b >= 2, "cycle lengths must be >= 2")
    _need(k >= 1, "connecting path needs at least one edge")
    edges: list[tuple[int, int]] = []
    nxt = _add_path(edges, 0, 0, a, 1)
    second = nxt
    nxt = _add_path(edges, second, second, b, nxt + 1)
    nxt = _add_path(edges, 0, second, k, nxt)
    return UndirectedGraph(nxt, tuple(edges))


def butterfly() -> UndirectedGraph:
    """Two triangles meeting at node 0: x1 x2 x3 then y1 y2 y3."""
    return kissing_cycles(3, 3)


def glasses() -> UndirectedGraph:
    """Two triangles joined by a bridge: x1 x2 x3, y1 y2 y3, then z."""
    return two_cycles_with_path(3, 3, 1)


NAMED_GRAPHS = {
    "complete": complete,
    "cycle": cycle,
    "path": path,
    "star": star,
    "monma": monma,
    "butterfly": butterfly,
    "glasses": glasses,
    "kissing_cycles": kissing_cycles,
    "two_cycles_with_path": two_cycles_with_path,
}


def named_graph(name: str, *params: int) -> UndirectedGraph:
    try:
        build = NAMED_GRAPHS[name]
    except KeyError:
        raise DomainError(f"unknown graph family {name!r}") from None
    try:
        return build(*params)
    except TypeError as exc:
        raise DomainError(f"bad parameters for {name}: {exc}") from None
