from itertools import combinations

import networkx as nx
import pytest
from conftest import graphs, from_nx, to_nx
from hypothesis import given
from hypothesis import strategies as st

from rigiverify.enumeration import (
    EnumerationLimitError,
    canonical_code,
    enumerate_graphs,
    extend_by_vertex,
    is_isomorphic,
)
from rigiverify.graph import (
    Graph,
    all_pairs,
    complete,
    complete_bipartite,
    cone,
    construct_family,
    cycle,
    edge_split,
    empty,
    graph_from_mask,
    is_k_connected,
    is_minimally_k_connected,
    k4_2sum_k4,
    k4q,
    k4q_hat,
    kappa,
    pair_index,
    parallel_connection,
    path,
    small_separators,
    two_k4_vertex_edge,
    two_separations,
    two_sum,
    vertex_connectivity,
    wheel,
)
from rigiverify.graph6 import Graph6Error, graph6_decode, graph6_encode, read_graph6


# --- data type ------------------------------------------------------------------


def test_graph_normalises_and_sorts():
    g = Graph(4, ((3, 1), (0, 2), (2, 1)))
    assert g.edges == ((0, 2), (1, 2), (1, 3))


@pytest.mark.parametrize("edges", [((0, 0),), ((0, 1), (1, 0)), ((0, 4),)])
def test_graph_rejects_invalid_edges(edges):
    with pytest.raises(ValueError):
        Graph(4, edges)


def test_pair_index_is_lexicographic():
    n = 6
    for k, (u, v) in enumerate(all_pairs(n)):
        assert pair_index(n, u, v) == pair_index(n, v, u) == k


# --- families and constructions -----------------------------------------------------


@pytest.mark.parametrize(
    "g,n,m",
    [
        (complete(4), 4, 6),
        (wheel(5), 5, 8),
        (k4q_hat(2), 6, 11),
        (k4q(2), 6, 10),
        (two_k4_vertex_edge(), 7, 13),
    ],
)
def test_family_sizes(g, n, m):
    assert (g.n, g.m) == (n, m)


def test_construct_family_errors():
    with pytest.raises(KeyError):
        construct_family("petersen", [])
    with pytest.raises(ValueError):
        construct_family("K4q", [0])
    with pytest.raises(ValueError):
        construct_family("complete_bipartite", [3])
    assert construct_family("complete_bipartite", [3, 4]) == complete_bipartite(3, 4)


def test_cone_examples():
    assert is_isomorphic(cone(cycle(4)), wheel(5))
    assert cone(complete(3)) == complete(4)
    c = cone(empty(0))
    assert (c.n, c.m) == (1, 0)


def test_two_sum_and_parallel_connection():
    ts = two_sum(complete(4), (0, 1), complete(4), (2, 3))
    pc = parallel_connection(complete(4), (0, 1), complete(4), (2, 3))
    assert (ts.n, ts.m) == (6, 10)
    assert (pc.n, pc.m) == (6, 11)
    assert nx.is_isomorphic(to_nx(ts), to_nx(k4q(2)))
    assert nx.is_isomorphic(to_nx(k4_2sum_k4()), to_nx(k4q(2)))
    with pytest.raises(KeyError):
        two_sum(k4q(2), (0, 1), complete(4), (0, 1))


def test_edge_split_examples():
    w = edge_split(complete(4), (0, 1), 2, [2])
    assert nx.is_isomorphic(to_nx(w), to_nx(wheel(5)))
    assert edge_split(path(2), (0, 1), 1, []) == Graph(3, ((0, 2), (1, 2)))
    with pytest.raises(ValueError):
        edge_split(complete(4), (0, 1), 2, [1])
    with pytest.raises(ValueError):
        edge_split(complete(4), (0, 1), 3, [2])


@given(graphs(n_min=2), graphs(n_min=2), st.data())
def test_construction_arithmetic(g1, g2, data):
    if not g1.m or not g2.m:
        return
    e1 = data.draw(st.sampled_from(g1.edges))
    e2 = data.draw(st.sampled_from(g2.edges))
    pc = parallel_connection(g1, e1, g2, e2)
    assert (pc.n, pc.m) == (g1.n + g2.n - 2, g1.m + g2.m - 1)
    ts = two_sum(g1, e1, g2, e2)
    assert (ts.n, ts.m) == (pc.n, pc.m - 1)
    c = cone(g1)
    assert (c.n, c.m, c.degree(g1.n)) == (g1.n + 1, g1.m + g1.n, g1.n)
    d = data.draw(st.integers(1, 3))
    others = [x for x in range(g1.n) if x not in e1]
    if len(others) >= d - 1:
        s = edge_split(g1, e1, d, others[: d - 1])
        assert (s.n, s.m, s.degree(g1.n)) == (g1.n + 1, g1.m + d, d + 1)


# --- connectivity ------------------------------------------------------------------


def test_kappa_examples():
    assert kappa(complete(4).remove_edge(0, 1), 0, 1) == 2
    assert kappa(k4q(2), 0, 1) == 4
    assert kappa(path(3), 0, 2) == 1
    with pytest.raises(ValueError):
        kappa(path(3), 1, 1)


def _min_vertex_cut_brute(g, u, v):
    rest = [x for x in range(g.n) if x not in (u, v)]
    for k in range(len(rest) + 1):
        for cut in combinations(rest, k):
            h = to_nx(g)
            h.remove_nodes_from(cut)
            if not nx.has_path(h, u, v):
                return k
    return len(rest)


@given(graphs(n_min=2))
def test_kappa_is_menger(g):
    for u, v in combinations(range(g.n), 2):
        if not g.has_edge(u, v):
            assert kappa(g, u, v) == _min_vertex_cut_brute(g, u, v)
        else:
            assert kappa(g, u, v) == 1 + kappa(g.remove_edge(u, v), u, v)


@given(graphs(n_min=2))
def test_vertex_connectivity_matches_networkx(g):
    assert vertex_connectivity(g) == nx.node_connectivity(to_nx(g))
    for k in range(1, 4):
        assert is_k_connected(g, k) == (g.n > k and nx.node_connectivity(to_nx(g)) >= k)


def test_k_connectivity_examples():
    assert is_k_connected(complete(4), 3)
    assert not is_k_connected(complete(3), 3)
    assert is_minimally_k_connected(cycle(5), 2)
    assert is_minimally_k_connected(complete_bipartite(3, 3), 3)


def test_two_separations_examples():
    pairs = [e for e, _ in two_separations(k4q_hat(2))]
    assert (0, 1) in pairs
    assert two_separations(complete(5)) == []
    for (u, v), (a, b) in two_separations(k4q_hat(3)):
        assert a & b == {u, v}
        assert a | b == set(range(8))


def test_small_separators():
    seps = small_separators(k4q(2), 2, containing=(0, 1))
    assert [set(S) for S, _ in seps] == [{0, 1}]


# --- graph6 ---------------------------------------------------------------------


def test_graph6_examples():
    assert graph6_decode("C~") == complete(4)
    assert graph6_decode("D??") == empty(5)
    assert graph6_encode(complete(4)) == "C~"
    assert graph6_decode(">>graph6<<C~") == complete(4)


@given(graphs(n_min=0, n_max=9))
def test_graph6_matches_networkx(g):
    ours = graph6_encode(g)
    theirs = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
    assert ours == theirs
    assert graph6_decode(ours) == g


def test_graph6_long_form():
    g = path(70)
    s = graph6_encode(g)
    assert s.startswith("~")
    assert graph6_decode(s) == g
    assert s == nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()


@pytest.mark.parametrize("bad", ["", "C~~", "C ", "C\x7f", "~~???"])
def test_graph6_rejects_malformed(bad):
    with pytest.raises(Graph6Error):
        graph6_decode(bad)


def test_read_graph6_names_line():
    with pytest.raises(Graph6Error, match="line 3"):
        list(read_graph6(["C~", "", "C"]))


# --- enumeration -----------------------------------------------------------------


ATLAS_COUNTS = {0: 1, 1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044}


@pytest.mark.parametrize("n", range(8))
def test_enumeration_counts(n):
    assert len(list(enumerate_graphs(n))) == ATLAS_COUNTS[n]


def test_enumeration_matches_atlas_classes():
    atlas = [from_nx(h) for h in nx.graph_atlas_g() if h.number_of_nodes() == 6]
    ours = {canonical_code(g) for g in enumerate_graphs(6)}
    assert {canonical_code(g) for g in atlas} == ours


def test_every_labeled_graph_on_five_vertices_hits_one_class():
    reps = {canonical_code(g): g for g in enumerate_graphs(5)}
    for mask in range(1 << 10):
        g = graph_from_mask(5, mask)
        assert canonical_code(g) in reps


def test_enumeration_is_deterministic_and_round_trips():
    a = [graph6_encode(g) for g in enumerate_graphs(7)]
    b = [graph6_encode(g) for g in enumerate_graphs(7)]
    assert a == b
    assert all(graph6_encode(graph6_decode(s)) == s for s in a)


def test_enumeration_limit():
    with pytest.raises(EnumerationLimitError):
        list(enumerate_graphs(8))


def test_extend_by_vertex_reaches_eight():
    g8 = extend_by_vertex(enumerate_graphs(7))
    assert len(g8) == 12346
    dense = extend_by_vertex(enumerate_graphs(7), min_edges=16)
    assert len(dense) == sum(1 for g in g8 if g.m >= 16)


@given(graphs(n_min=0, n_max=7), st.permutations(range(7)))
def test_isomorphism_against_networkx(g, perm):
    p = [x for x in perm if x < g.n]
    h = g.relabel(p)
    assert is_isomorphic(g, h)
    other = g.complement()
    assert is_isomorphic(g, other) == nx.is_isomorphic(to_nx(g), to_nx(other))
