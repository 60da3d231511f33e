import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from digraph_ideals.graphs import (
    CapExceeded,
    Digraph,
    Edge,
    GraphError,
    UEdge,
    UGraph,
    build_h_graph,
    build_k_graph,
    cycle_graph,
    digraph_from_bipartite,
    directed_path_counts,
    enumerate_cycles_oracle,
    h_matching,
    incidence_matrix,
    is_bipartite,
    is_perfect_matching,
    orient,
    perfect_matching,
    topological_sort,
    twin_names,
    witness_from_edge_set,
)

from helpers import D1, D2, D4, digraphs


def to_nx(D):
    G = nx.DiGraph()
    G.add_nodes_from(D.vertices)
    for e in D.edges:
        G.add_edge(e.tail, e.head, label=e.label)
    return G


def nx_cycle_edge_sets(D):
    """Edge-label sets of the elementary cycles of the underlying graph, via networkx."""
    U = to_nx(D).to_undirected()
    out = set()
    for cyc in nx.simple_cycles(U):
        if len(cyc) < 3:
            continue
        pairs = zip(cyc, cyc[1:] + cyc[:1])
        out.add(frozenset(U.edges[a, b]["label"] for a, b in pairs))
    return out


def test_construction_rejects_non_simple():
    with pytest.raises(GraphError):
        Digraph(("a",), (Edge("e1", "a", "a"),))
    with pytest.raises(GraphError):
        Digraph(("a", "b"), (Edge("e1", "a", "b"), Edge("e2", "a", "b")))
    with pytest.raises(GraphError):
        Digraph(("a", "b"), (Edge("e1", "a", "b"), Edge("e2", "b", "a")))
    with pytest.raises(GraphError):
        Digraph(("a", "b"), (Edge("e1", "a", "c"),))
    with pytest.raises(GraphError):
        Digraph(("a", "b"), (Edge("e1", "a", "b"), Edge("e1", "b", "a")))


def test_incidence_matrix_of_d2():
    M = incidence_matrix(D2)
    assert M.tolist() == [
        [-1, 0, -1, 0, 0],
        [1, -1, 0, 0, 0],
        [0, 1, 1, 1, -1],
        [0, 0, 0, -1, 0],
        [0, 0, 0, 0, 1],
    ]


@settings(max_examples=60, deadline=None)
@given(digraphs())
def test_incidence_columns(D):
    M = incidence_matrix(D)
    for j in range(D.m):
        col = M.column(j)
        assert sorted(x for x in col if x) == [-1, 1]


def test_fixture_cycles_d1():
    cycles = {c.edge_set: c.directed for c in enumerate_cycles_oracle(D1)}
    assert cycles == {
        frozenset({"e1", "e2", "e3"}): True,
        frozenset({"e3", "e4", "e5"}): False,
        frozenset({"e1", "e2", "e4", "e5"}): False,
    }


def test_k_and_h_graphs_of_d4():
    K = build_k_graph(D4)
    assert {frozenset((e.a, e.b)) for e in K.edges} == {
        frozenset(p) for p in [("z1", "v2"), ("z3", "v2"), ("z1", "v4"), ("z3", "v4"), ("z3", "v5")]
    }
    H = build_h_graph(D4)
    assert H.m == D4.m + D4.n
    assert is_perfect_matching(H, h_matching(D4))


def test_twin_names_avoid_collisions():
    D = Digraph(("a", "z_a"), (Edge("e1", "a", "z_a"),))
    z = twin_names(D)
    assert len(set(z.values()) | set(D.vertices)) == 4


@settings(max_examples=60, deadline=None)
@given(digraphs())
def test_h_graph_bipartite_with_perfect_matching(D):
    H = build_h_graph(D)
    assert is_bipartite(H) is not None
    M = perfect_matching(H)
    assert M is not None and is_perfect_matching(H, M)
    assert is_perfect_matching(H, h_matching(D))
    NX = nx.Graph([(e.a, e.b) for e in H.edges])
    NX.add_nodes_from(H.vertices)
    assert nx.is_bipartite(NX)
    assert 2 * len(nx.max_weight_matching(NX, maxcardinality=True)) == H.n


@settings(max_examples=60, deadline=None)
@given(digraphs())
def test_bipartite_round_trip(D):
    back = digraph_from_bipartite(build_h_graph(D), h_matching(D))
    assert back == D


@settings(max_examples=80, deadline=None)
@given(digraphs(max_n=7, max_m=12))
def test_cycle_oracle_matches_networkx(D):
    ours = enumerate_cycles_oracle(D)
    assert {c.edge_set for c in ours} == nx_cycle_edge_sets(D)
    assert len({c.edge_set for c in ours}) == len(ours)
    n_directed = sum(1 for _ in nx.simple_cycles(to_nx(D)))
    assert sum(c.directed for c in ours) == n_directed


@settings(max_examples=80, deadline=None)
@given(digraphs(max_n=7, max_m=12))
def test_oracle_cycles_lie_in_cycle_space(D):
    M = incidence_matrix(D)
    for c in enumerate_cycles_oracle(D):
        assert M.apply(c.signed_vector(D)) == (0,) * D.n
        assert witness_from_edge_set(D, c.edges).edge_set == c.edge_set


@settings(max_examples=80, deadline=None)
@given(digraphs(max_n=7, max_m=12))
def test_topological_sort_matches_networkx(D):
    order, witness = topological_sort(D)
    assert (order is not None) == nx.is_directed_acyclic_graph(to_nx(D))
    if order is not None:
        pos = {v: i for i, v in enumerate(order)}
        assert all(pos[e.tail] < pos[e.head] for e in D.edges)
    else:
        assert witness.directed
        assert witness_from_edge_set(D, witness.edges) is not None


@settings(max_examples=60, deadline=None)
@given(digraphs(max_n=6, max_m=9))
def test_path_counts_match_networkx(D):
    G = to_nx(D)
    counts = directed_path_counts(D, limit=2)
    for u in D.vertices:
        for v in D.vertices:
            if u == v:
                continue
            n = sum(1 for _ in nx.all_simple_paths(G, u, v))
            assert counts.get((u, v), 0) == min(n, 2)


def test_witness_rejects_non_cycles():
    assert witness_from_edge_set(D1, ["e1", "e2"]) is None
    assert witness_from_edge_set(D1, ["e1", "e2", "e6"]) is None
    # two triangles sharing a vertex form a closed trail, not one cycle
    D = Digraph.from_pairs(5, [(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 3)])
    assert witness_from_edge_set(D, D.edge_labels) is None


def test_oracle_cap():
    K5 = Digraph.from_pairs(5, [(a, b) for a in range(1, 6) for b in range(a + 1, 6)])
    with pytest.raises(CapExceeded):
        enumerate_cycles_oracle(K5, cap=5)
    assert len(enumerate_cycles_oracle(K5)) == 37


def test_orientation_is_seeded():
    G = cycle_graph(5)
    assert orient(G, 3) == orient(G, 3)
    assert {orient(G, s).edges for s in range(20)} != {orient(G, 0).edges}


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 7), st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), max_size=10))
def test_is_bipartite_matches_networkx(n, pairs):
    vs = tuple(f"u{i}" for i in range(n))
    seen, edges = set(), []
    for a, b in pairs:
        a, b = a % n, b % n
        if a != b and frozenset((a, b)) not in seen:
            seen.add(frozenset((a, b)))
            edges.append(UEdge(f"e{len(edges) + 1}", vs[a], vs[b]))
    G = UGraph(vs, tuple(edges))
    NX = nx.Graph([(e.a, e.b) for e in edges])
    NX.add_nodes_from(vs)
    parts = is_bipartite(G)
    assert (parts is not None) == nx.is_bipartite(NX)
    if parts is not None:
        left, right = parts
        assert all((e.a in left) != (e.b in left) for e in edges)
        M = perfect_matching(G)
        full = 2 * len(nx.max_weight_matching(NX, maxcardinality=True)) == n
        assert (M is not None) == full
