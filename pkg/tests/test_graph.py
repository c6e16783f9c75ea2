import json

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import C4, K2, K3, P3, brute_copies, small_graphs
from euclid_ramsey.errors import GraphOverflow, LoopEdge, SizeMismatch, VertexOutOfRange
from euclid_ramsey.graph import (Embedding, Graph, PowerIndex, build_graph, cartesian_power,
                                 cartesian_product, find_copies, from_digits, is_copy, to_digits)
from euclid_ramsey import generators as gen


def to_nx(G):
    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    g.add_edges_from(G.edges)
    return g


def test_build_triangle():
    g = build_graph(3, [(0, 1), (1, 2), (2, 0)])
    assert g.n == 3 and g.m == 3
    assert g.edges == ((0, 1), (0, 2), (1, 2))


def test_build_dedup():
    g = build_graph(2, [(0, 1), (1, 0)])
    assert g.m == 1


def test_build_rejects_loop():
    with pytest.raises(LoopEdge):
        build_graph(3, [(1, 1)])


def test_build_rejects_out_of_range():
    with pytest.raises(VertexOutOfRange):
        build_graph(2, [(0, 2)])


def test_json_roundtrip():
    g = gen.cycle(5)
    d = json.loads(g.to_json())
    assert d == {"name": "C5", "n": 5, "edges": [[0, 1], [0, 4], [1, 2], [2, 3], [3, 4]]}
    assert Graph.from_json(g.to_json()) == g


def test_edgelist_roundtrip():
    g = gen.hypercube(3)
    text = g.to_edgelist()
    assert Graph.from_edgelist(text).edges == g.edges
    assert Graph.from_edgelist("# a comment\n0 1\n\n1 2\n").n == 3


def test_product_k2_k2_is_c4():
    g = cartesian_product(K2, K2)
    assert g.n == 4 and g.m == 4
    assert nx.is_isomorphic(to_nx(g), nx.cycle_graph(4))


def test_product_k3_k3_counts():
    g = cartesian_product(K3, K3)
    assert (g.n, g.m) == (9, 18)


def test_product_grid_p2_p3():
    g = cartesian_product(gen.path(2), gen.path(3))
    # frozen from a direct construction of the 2x3 grid
    assert g.m == 7
    assert nx.is_isomorphic(to_nx(g), nx.grid_2d_graph(2, 3))


def test_product_vertex_order():
    g = cartesian_product(K2, P3)
    # (g,h) -> g*3 + h; fibre edges inside {0,1,2} and {3,4,5}
    assert g.has_edge(0, 1) and g.has_edge(3, 4) and g.has_edge(0, 3)
    assert not g.has_edge(0, 4)


def test_power_hypercube():
    g = cartesian_power(K2, 3)
    assert (g.n, g.m) == (8, 12)
    assert nx.is_isomorphic(to_nx(g), nx.hypercube_graph(3))


def test_power_two_equals_product():
    assert cartesian_power(K3, 2).edges == cartesian_product(K3, K3).edges


def test_power_k3_cubed():
    g = cartesian_power(K3, 3)
    assert (g.n, g.m) == (27, 81)
    assert g.m == 3 * K3.m * 3 ** 2


def test_power_adjacency_rule():
    G = gen.path(3)
    N = 3
    g = cartesian_power(G, N)
    for x in range(g.n):
        for y in range(x + 1, g.n):
            dx, dy = to_digits(x, 3, N), to_digits(y, 3, N)
            diff = [i for i in range(N) if dx[i] != dy[i]]
            expect = len(diff) == 1 and G.has_edge(dx[diff[0]], dy[diff[0]])
            assert g.has_edge(x, y) == expect


def test_overflow():
    with pytest.raises(GraphOverflow):
        cartesian_power(K3, 8)
    assert cartesian_power(K3, 7).n == 2187


def test_power_index():
    p = PowerIndex.of(14, 3, 3)
    assert p.digits == (2, 1, 1)
    assert p.id == 14 == from_digits((2, 1, 1), 3)


def test_copies_c4_in_q3():
    assert len(find_copies(cartesian_power(K2, 3), C4)) == 6


def test_copies_identity():
    assert list(find_copies(K3, K3, induced=True)) == [(0, 1, 2)]


def test_copies_induced_c4_in_k3k3():
    H = cartesian_product(K3, K3)
    cs = find_copies(H, C4, induced=True)
    assert len(cs) == 9
    assert set(cs) == brute_copies(H, C4, induced=True)


def test_copies_limit_flag():
    cs = find_copies(cartesian_power(K2, 3), C4, limit=2)
    assert len(cs) == 2 and cs.truncated
    cs = find_copies(cartesian_power(K2, 3), C4, limit=6)
    assert len(cs) == 6 and not cs.truncated


def test_is_copy_examples():
    assert not is_copy(K3, P3, Embedding((0, 1, 2)), induced=True)
    assert is_copy(K3, P3, Embedding((0, 1, 2)), induced=False)
    Q3 = cartesian_power(K2, 3)
    assert is_copy(Q3, C4, Embedding((0b000, 0b001, 0b011, 0b010)), induced=True)


def test_is_copy_size_mismatch():
    with pytest.raises(SizeMismatch):
        is_copy(K3, P3, (0, 1))


def test_embedding_injective():
    with pytest.raises(ValueError):
        Embedding((0, 0, 1))


@settings(max_examples=60, deadline=None)
@given(small_graphs(nmax=5), small_graphs(nmax=5))
def test_product_edge_formula(G, H):
    P = cartesian_product(G, H)
    assert P.m == G.n * H.m + H.n * G.m
    assert nx.is_isomorphic(to_nx(P), nx.cartesian_product(to_nx(G), to_nx(H)))


@settings(max_examples=30, deadline=None)
@given(small_graphs(nmin=2, nmax=4))
def test_power_matches_iterated_product(G):
    for N in (2, 3):
        if G.n ** N > 64:
            break
        assert cartesian_power(G, N).edges == cartesian_product(cartesian_power(G, N - 1), G).edges


@settings(max_examples=60, deadline=None)
@given(small_graphs(nmax=7), small_graphs(nmin=1, nmax=4))
def test_find_copies_matches_bruteforce(host, pat):
    for induced in (False, True):
        got = find_copies(host, pat, induced)
        assert len(set(got)) == len(got)
        assert set(got) == brute_copies(host, pat, induced)


@settings(max_examples=60, deadline=None)
@given(small_graphs(nmax=7), small_graphs(nmin=1, nmax=4))
def test_induced_copies_subset(host, pat):
    assert set(find_copies(host, pat, True)) <= set(find_copies(host, pat, False))
