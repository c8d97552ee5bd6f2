from fractions import Fraction as F

import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from boolquery.core import ProductMeasure, output_probability
from boolquery.dtree import Leaf, dist_cost, tree_cost
from boolquery.percolation import (
    Multigraph,
    connected,
    exploration_tree,
    explore_count,
    grid_graph,
    max_flow_unit,
    mc_estimate,
    mc_values,
    perc_function,
    pivotal_count,
    witness_at,
)
from boolquery.pointwise import block_sensitivity_at, sensitivity_at, witness_size_at

HALF = ProductMeasure(F(1, 2))


@st.composite
def graphs(draw):
    v = draw(st.integers(2, 6))
    edges = draw(st.lists(st.tuples(st.integers(0, v - 1), st.integers(0, v - 1)), min_size=1, max_size=9))
    A = draw(st.sets(st.integers(0, v - 1), min_size=1, max_size=2))
    B = draw(st.sets(st.integers(0, v - 1), min_size=1, max_size=2))
    return Multigraph.build(v, edges, A, B)


def nx_network(g, om):
    """Open edges infinite, closed edges capacity 1, terminals tied to s and t."""
    D = nx.DiGraph()
    big = g.m + 1
    D.add_nodes_from(range(g.vertices))
    for (u, v), o in zip(g.edges, om):
        if u == v:
            continue
        c = big if o else 1
        for a, b in ((u, v), (v, u)):
            if D.has_edge(a, b):
                D[a][b]["capacity"] += c
            else:
                D.add_edge(a, b, capacity=c)
    for a in g.A:
        D.add_edge("s", a, capacity=10 * big)
    for b in g.B:
        D.add_edge(b, "t", capacity=10 * big)
    return D


def nx_open(g, om):
    G = nx.Graph()
    G.add_nodes_from(range(g.vertices))
    G.add_edges_from(e for e, o in zip(g.edges, om) if o)
    return G


def oracle_connected(g, om):
    G = nx_open(g, om)
    return any(nx.has_path(G, a, b) for a in g.A for b in g.B)


def oracle_witness(g, om):
    if oracle_connected(g, om):
        G = nx_open(g, om)
        return min(nx.shortest_path_length(G, a, b) for a in g.A for b in g.B if nx.has_path(G, a, b))
    return nx.minimum_cut_value(nx_network(g, om), "s", "t")


@given(graphs(), st.data())
def test_against_networkx(g, data):
    om = [data.draw(st.integers(0, 1)) for _ in range(g.m)]
    assert connected(g, om) == oracle_connected(g, om)
    assert witness_at(g, om) == oracle_witness(g, om)


@given(graphs())
def test_menger_witness_equals_block_sensitivity(g):
    f = perc_function(g)
    for i in range(f.size):
        om = [(i >> k) & 1 for k in range(g.m)]
        assert witness_at(g, om) == witness_size_at(f, i) == block_sensitivity_at(f, i)
        assert pivotal_count(g, om) == sensitivity_at(f, i)


def test_max_flow_small():
    # two parallel edges and a bridge
    assert max_flow_unit(3, [(0, 1), (0, 1), (1, 2)], 0, 2) == 1
    assert max_flow_unit(2, [(0, 1), (0, 1), (0, 1)], 0, 1) == 3


def test_grid_sizes():
    assert grid_graph(1).m == 7
    assert grid_graph(2).m == 17
    assert grid_graph(3).m == 31


def test_grid1_exact():
    g = grid_graph(1)
    f = perc_function(g)
    assert output_probability(f, HALF) == F(1, 2)
    for i in range(f.size):
        om = [(i >> k) & 1 for k in range(g.m)]
        assert witness_at(g, om) == block_sensitivity_at(f, i)
        assert pivotal_count(g, om) == sensitivity_at(f, i)


def test_exploration_tree_matches_counts():
    g = grid_graph(1)
    f = perc_function(g)
    t = exploration_tree(g)

    def walk(t, x):
        depth = 0
        while not isinstance(t, Leaf):
            t = t.one if (x >> t.bit) & 1 else t.zero
            depth += 1
        return t.value, depth

    for i in range(f.size):
        val, depth = walk(t, i)
        assert val == f.at(i)
        assert depth == explore_count(g, [(i >> k) & 1 for k in range(g.m)])
    assert tree_cost(t, f, HALF) >= dist_cost(f, HALF)


def test_seed_determinism_and_shards():
    g = grid_graph(3)
    a = mc_values(g, 0.5, "witness", 3000, seed=7)
    b = mc_values(g, 0.5, "witness", 3000, seed=7, shards=4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, mc_values(g, 0.5, "witness", 3000, seed=8))


def test_grid3_monte_carlo():
    g = grid_graph(3)
    est = mc_estimate(g, 0.5, "crossing", 20000, seed=7)
    assert abs(est.mean - 0.5) <= 5 * est.stderr
    assert mc_values(g, 0.5, "witness", 5000, seed=3).min() >= 4


def test_bad_inputs():
    with pytest.raises(ValueError):
        Multigraph.build(2, [(0, 2)], [0], [1])
    with pytest.raises(ValueError):
        grid_graph(0)
    with pytest.raises(ValueError):
        connected(grid_graph(1), [1, 0])
