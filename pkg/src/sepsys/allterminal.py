"""All-terminal reliability: separable-graph classification, closed-form
reliability, the reliability polynomial, utility/difficulty and feasible
cost assignments."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ClassError, ConnectivityError, DomainError, SizeError, ValidationError
from .graph import (
    UndirectedGraph,
    all_terminal_system,
    component_count,
    edge_connectivity,
    global_mincut,
    mst_cost,
    spanning_tree_count,
)
from .separability import CostAssignment

POLYNOMIAL_CAP = 20


class GraphCategory(enum.Enum):
    DISCONNECTED = "disconnected"
    TREE = "tree"
    ELEMENTARY_CYCLE = "elementary-cycle"
    CYCLE_WITH_ARBORESCENCES = "cycle-with-arborescences"
    NONSEPARABLE = "nonseparable"


@dataclass(frozen=True)
class GraphClass:
    category: GraphCategory
    corank: int  # m - n + number of components

    @property
    def separable(self) -> bool:
        return self.category is not GraphCategory.NONSEPARABLE


def classify(graph: UndirectedGraph) -> GraphClass:
    """Separable iff disconnected or of corank at most one (linear time).

    The equivalence with hyperplane separability is for simple graphs;
    multigraphs are classified by the same corank rule.
    """
    comps = component_count(graph)
    corank = graph.m - graph.n + comps
    if comps > 1:
        cat = GraphCategory.DISCONNECTED
    elif corank == 0:
        cat = GraphCategory.TREE
    elif corank == 1:
        if all(d == 2 for d in graph.degrees()):
            cat = GraphCategory.ELEMENTARY_CYCLE
        else:
            cat = GraphCategory.CYCLE_WITH_ARBORESCENCES
    else:
        cat = GraphCategory.NONSEPARABLE
    return GraphClass(cat, corank)


def _require_connected(graph: UndirectedGraph):
    if component_count(graph) != 1:
        raise ConnectivityError("graph must be connected")


def utility_and_difficulty(graph: UndirectedGraph) -> tuple[int, int]:
    """u = lambda - corank and d = corank - lambda - 1."""
    if component_count(graph) != 1:
        raise DomainError("utility and difficulty need a connected graph")
    lam = edge_connectivity(graph)
    corank = graph.m - graph.n + 1
    return lam - corank, corank - lam - 1


def cycle_edges(graph: UndirectedGraph) -> list[int]:
    """Edges left after repeatedly stripping pendant edges (the 2-core)."""
    deg = graph.degrees()
    incident: list[list[int]] = [[] for _ in range(graph.n)]
    for i, (u, v) in enumerate(graph.edges):
        incident[u].append(i)
        incident[v].append(i)
    alive = [True] * graph.m
    leaves = [v for v in range(graph.n) if deg[v] == 1]
    while leaves:
        v = leaves.pop()
        if deg[v] != 1:
            continue
        i = next(i for i in incident[v] if alive[i])
        alive[i] = False
        deg[v] -= 1
        u, w = graph.edges[i]
        other = w if u == v else u
        deg[other] -= 1
        if deg[other] == 1:
            leaves.append(other)
    return [i for i in range(graph.m) if alive[i]]


def _edge_probs(graph: UndirectedGraph, probs) -> tuple[Fraction, ...]:
    if probs is None:
        probs = graph.probs
    if probs is None:
        raise ValidationError("edge probabilities are required")
    p = tuple(Fraction(x) for x in probs)
    if len(p) != graph.m or any(not 0 <= x <= 1 for x in p):
        raise ValidationError("need one probability in [0, 1] per edge")
    return p


def _cycle_reliability(p: list[Fraction]) -> Fraction:
    # all edges up, or exactly one down; prefix/suffix products keep it linear
    k = len(p)
    prefix = [Fraction(1)] * (k + 1)
    for i, x in enumerate(p):
        prefix[i + 1] = prefix[i] * x
    suffix = [Fraction(1)] * (k + 1)
    for i in range(k - 1, -1, -1):
        suffix[i] = suffix[i + 1] * p[i]
    return prefix[k] + sum(((1 - p[i]) * prefix[i] * suffix[i + 1] for i in range(k)), Fraction(0))


def reliability_closed_form(graph: UndirectedGraph, probs=None) -> Fraction:
    cls = classify(graph)
    cat = cls.category
    if cat is GraphCategory.NONSEPARABLE:
        raise ClassError(f"no closed form for nonseparable graphs (corank {cls.corank}); use brute force")
    if cat is GraphCategory.DISCONNECTED:
        return Fraction(0)
    p = _edge_probs(graph, probs)
    if cat is GraphCategory.TREE:
        out = Fraction(1)
        for x in p:
            out *= x
        return out
    on_cycle = cycle_edges(graph)
    out = _cycle_reliability([p[i] for i in on_cycle])
    cyc = set(on_cycle)
    for i, x in enumerate(p):
        if i not in cyc:
            out *= x
    return out


@dataclass(frozen=True)
class ReliabilityPolynomial:
    """R(r) = sum_i coefficients[i] * r^(m-i) * (1-r)^i, i = 0..corank.

    ``coefficients[i]`` counts connected spanning subgraphs with m - i edges;
    for i < edge_connectivity it is simply C(m, i), and the last entry is
    the tree number.
    """

    m: int
    n: int
    edge_connectivity: int
    corank: int
    coefficients: tuple[int, ...]
    tree_number: int

    @property
    def unknown_range(self) -> range:
        """Indices whose coefficients are not given by binomials or the tree count."""
        return range(self.edge_connectivity, self.corank)

    def __call__(self, r) -> Fraction:
        r = Fraction(r)
        return sum(
            (c * r ** (self.m - i) * (1 - r) ** i for i, c in enumerate(self.coefficients)),
            Fraction(0),
        )


def reliability_polynomial(graph: UndirectedGraph, cap: int = POLYNOMIAL_CAP) -> ReliabilityPolynomial:
    """Coefficients by exhaustive connectivity counting over edge subsets."""
    _require_connected(graph)
    if graph.m > cap:
        raise SizeError(f"{graph.m} edges exceed the subset-enumeration cap {cap}")
    m, n = graph.m, graph.n
    corank = m - n + 1
    if m:
        table = all_terminal_system(graph).table
        masks = np.arange(1 << m, dtype=np.int64)
        pop = np.zeros(1 << m, dtype=np.int64)
        for k in range(m):
            pop += (masks >> k) & 1
        by_size = np.bincount(pop[table == 1], minlength=m + 1)
    else:
        by_size = np.array([1])
    coeffs = tuple(int(by_size[m - i]) for i in range(corank + 1))
    tau = spanning_tree_count(graph)
    if coeffs[-1] != tau:
        raise AssertionError(f"subset count {coeffs[-1]} disagrees with Kirchhoff {tau}")
    return ReliabilityPolynomial(m, n, edge_connectivity(graph), corank, coeffs, tau)


def graph_cost_assignment(graph: UndirectedGraph, costs) -> CostAssignment:
    """Cheapest pathset = minimum spanning tree, cheapest cutset = global mincut."""
    costs = tuple(Fraction(c) for c in costs)
    return CostAssignment(costs, mst_cost(graph, costs), global_mincut(graph, costs)[0])


ARBORESCENCE_WEIGHT = 3


def find_feasible_assignment(graph: UndirectedGraph) -> CostAssignment:
    """Unit cost on tree and cycle edges, 3 on edges hanging off a cycle."""
    cls = classify(graph)
    cat = cls.category
    if cat in (GraphCategory.NONSEPARABLE, GraphCategory.DISCONNECTED):
        raise ClassError(f"no feasible assignment for a {cat.value} graph")
    if graph.n < 2:
        raise ClassError("a single node has no cutset to price")
    if cat is GraphCategory.CYCLE_WITH_ARBORESCENCES:
        cyc = set(cycle_edges(graph))
        costs = [1 if i in cyc else ARBORESCENCE_WEIGHT for i in range(graph.m)]
    else:
        costs = [1] * graph.m
    return graph_cost_assignment(graph, costs)
