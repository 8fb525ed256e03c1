import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import (
    brute_graph_reliability,
    brute_mincut,
    brute_mst,
    brute_tree_count,
    components,
    random_connected_graph,
    random_rational,
    random_separable_graph,
)
from sepsys.allterminal import (
    GraphCategory,
    classify,
    cycle_edges,
    find_feasible_assignment,
    reliability_closed_form,
    reliability_polynomial,
    utility_and_difficulty,
)
from sepsys.errors import ClassError, ConnectivityError, DomainError, SizeError, ValidationError
from sepsys.graph import (
    UndirectedGraph,
    all_terminal_system,
    butterfly,
    complete,
    cycle,
    edge_connectivity,
    glasses,
    global_mincut,
    kissing_cycles,
    monma,
    mst_cost,
    named_graph,
    path,
    spanning_tree_count,
    star,
    two_cycles_with_path,
)
from sepsys.separability import is_separable, verify_assignment_criterion
from sepsys.system import reliability

F = Fraction
TRI_PENDANT = UndirectedGraph(4, ((0, 1), (1, 2), (2, 0), (2, 3)))


def test_classify_examples():
    assert classify(path(4)).category is GraphCategory.TREE
    b = classify(butterfly())
    assert b.category is GraphCategory.NONSEPARABLE and b.corank == 2
    assert classify(TRI_PENDANT).category is GraphCategory.CYCLE_WITH_ARBORESCENCES
    assert classify(cycle(5)).category is GraphCategory.ELEMENTARY_CYCLE
    assert classify(UndirectedGraph(2, ())).category is GraphCategory.DISCONNECTED
    # two parallel edges form the cycle C_2
    assert classify(cycle(2)).category is GraphCategory.ELEMENTARY_CYCLE


def test_mst_examples():
    assert mst_cost(cycle(4)) == 3
    k4 = complete(4)
    w = [1, 2, 3, 4, 5, 6]
    assert mst_cost(k4, w) == brute_mst(4, k4.edges, w) == 6
    assert mst_cost(path(2), [F(7, 3)]) == F(7, 3)
    with pytest.raises(ConnectivityError):
        mst_cost(UndirectedGraph(3, ((0, 1),)))


def test_mincut_examples():
    assert global_mincut(cycle(6))[0] == 2
    assert global_mincut(path(5))[0] == 1
    with pytest.raises(DomainError):
        global_mincut(UndirectedGraph(1, ()))
    b = butterfly()
    rng = random.Random(3)
    for _ in range(20):
        n = [rng.randint(1, 9) for _ in range(6)]
        t1, t2 = sorted(n[:3]), sorted(n[3:])
        value, witness = global_mincut(b, n)
        assert value == min(t1[0] + t1[1], t2[0] + t2[1])
        assert sum(n[i] for i in witness) == value


def test_edge_connectivity_examples():
    assert edge_connectivity(path(4)) == 1
    assert edge_connectivity(cycle(7)) == 2
    assert edge_connectivity(complete(4)) == 3
    assert edge_connectivity(UndirectedGraph(3, ((0, 1),))) == 0


def test_utility_examples():
    assert utility_and_difficulty(path(5)) == (1, -2)
    assert utility_and_difficulty(cycle(5)) == (1, -2)
    assert utility_and_difficulty(butterfly()) == (0, -1)
    with pytest.raises(DomainError):
        utility_and_difficulty(UndirectedGraph(2, ()))


def test_tree_count_examples():
    assert spanning_tree_count(cycle(3)) == 3
    assert spanning_tree_count(complete(4)) == 16
    assert spanning_tree_count(butterfly()) == 9
    assert spanning_tree_count(UndirectedGraph(3, ((0, 1),))) == 0
    assert spanning_tree_count(complete(1)) == 1
    for n in range(2, 8):
        assert spanning_tree_count(complete(n)) == n ** (n - 2)


def test_closed_form_examples():
    assert reliability_closed_form(UndirectedGraph(2, ()), ()) == 0
    assert reliability_closed_form(path(3), [F(1, 2), F(1, 3)]) == F(1, 6)
    assert reliability_closed_form(cycle(3), [F(1, 2)] * 3) == F(1, 2)
    with pytest.raises(ClassError):
        reliability_closed_form(butterfly(), [F(1, 2)] * 6)


def test_cycle_edges_of_unicyclic():
    assert sorted(cycle_edges(TRI_PENDANT)) == [0, 1, 2]


def test_polynomial_examples():
    p = reliability_polynomial(cycle(3))
    assert p.coefficients == (1, 3) and p.tree_number == 3
    r = F(2, 7)
    assert p(r) == r ** 3 + 3 * r ** 2 * (1 - r)
    p = reliability_polynomial(path(4))
    assert p.coefficients == (1,) and p.tree_number == 1
    p = reliability_polynomial(complete(4))
    assert p.tree_number == 16 and p(1) == 1
    with pytest.raises(SizeError):
        reliability_polynomial(complete(7))


def test_feasible_assignment_examples():
    a = find_feasible_assignment(path(5))
    assert a.costs == (1,) * 4
    a = find_feasible_assignment(cycle(5))
    assert a.costs == (1,) * 5 and verify_assignment_criterion(a)
    a = find_feasible_assignment(TRI_PENDANT)
    assert a.costs == (1, 1, 1, 3)
    assert (a.total, a.min_path_cost, a.min_cut_cost) == (6, 5, 2)
    assert verify_assignment_criterion(a)
    with pytest.raises(ClassError):
        find_feasible_assignment(butterfly())


def test_named_graph_shapes():
    b = butterfly()
    assert (b.n, b.m) == (5, 6)
    m = monma(2, 2, 1)
    assert (m.n, m.m) == (4, 5)
    g = glasses()
    assert (g.n, g.m) == (6, 7)
    bridge = g.edges[6]
    assert brute_mincut(g.n, g.edges, [1] * 7) == 1
    assert components(g.n, [e for e in g.edges if e != bridge]) == 2
    assert star(3).m == 3 and star(3).n == 4
    assert named_graph("kissing_cycles", 3, 4).m == 7
    assert two_cycles_with_path(3, 4, 2).m == 9
    assert kissing_cycles(3, 3).edges == b.edges
    with pytest.raises(DomainError):
        named_graph("monma", 0, 1, 1)
    with pytest.raises(DomainError):
        named_graph("nope")


def test_graph_validation():
    with pytest.raises(ValidationError):
        UndirectedGraph(2, ((0, 0),))
    with pytest.raises(ValidationError):
        UndirectedGraph(2, ((0, 2),))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 6))
def test_graph_algorithms_against_brute_force(seed, n):
    rng = random.Random(seed)
    edges = random_connected_graph(rng, n)
    g = UndirectedGraph(n, tuple(edges))
    w = [rng.randint(0, 5) for _ in edges]
    assert mst_cost(g, w) == brute_mst(n, edges, w)
    value, witness = global_mincut(g, w)
    assert value == brute_mincut(n, edges, w)
    assert sum(w[i] for i in witness) == value
    assert components(n, [e for i, e in enumerate(edges) if i not in set(witness)]) > 1
    if len(edges) <= 12:
        assert spanning_tree_count(g) == brute_tree_count(n, edges)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_closed_form_against_brute_force(seed):
    rng = random.Random(seed)
    n, edges = random_separable_graph(rng, max_m=10)
    g = UndirectedGraph(n, tuple(edges))
    probs = [random_rational(rng) for _ in edges]
    assert reliability_closed_form(g, probs) == brute_graph_reliability(n, edges, probs)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 5))
def test_polynomial_matches_reliability(seed, n):
    rng = random.Random(seed)
    g = UndirectedGraph(n, tuple(random_connected_graph(rng, n)))
    poly = reliability_polynomial(g)
    assert poly(1) == 1
    r = random_rational(rng)
    assert poly(r) == reliability(all_terminal_system(g, [r] * g.m))
    assert poly.tree_number == brute_tree_count(n, g.edges)
    assert all(c >= 0 for c in poly.coefficients)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_hereditary_deletions(seed):
    rng = random.Random(seed)
    n, edges = random_separable_graph(rng, max_m=12)
    g = UndirectedGraph(n, tuple(edges))
    for _ in range(5):
        if g.m and (g.n == 1 or rng.random() < 0.5):
            g = g.delete_edges([rng.randrange(g.m)])
        elif g.n > 1:
            g = g.delete_node(rng.randrange(g.n))
        assert classify(g).separable


def test_multigraph_corank_rule_is_conservative():
    # three parallel edges behave like a parallel system, which is separable,
    # but the corank rule (meant for simple graphs) reports nonseparable
    g = UndirectedGraph(2, ((0, 1),) * 3)
    assert classify(g).category is GraphCategory.NONSEPARABLE
    assert is_separable(all_terminal_system(g)).separable


def test_disconnected_graphs_are_only_trivially_separable():
    # a disconnected graph has phi = 0 and counts as separable whatever its
    # components look like; removing the isolated node exposes a corank-2 core
    core = ((0, 1), (1, 2), (2, 3), (1, 4), (2, 5), (3, 6), (0, 5), (1, 3))
    g = UndirectedGraph(8, tuple((u if u < 6 else 7, v if v < 6 else 7) for u, v in core))
    assert classify(g).separable and is_separable(all_terminal_system(g)).separable
    h = g.delete_node(6)
    assert classify(h).category is GraphCategory.NONSEPARABLE
    assert not is_separable(all_terminal_system(h)).separable
