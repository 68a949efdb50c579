import networkx as nx
import numpy as np
import pytest
from conftest import graphs, to_nx
from hypothesis import given
from hypothesis import strategies as st

from rigiverify.enumeration import enumerate_graphs
from rigiverify.ffalgebra import DEFAULT_PRIME, matmul, rank, stack
from rigiverify.graph import Graph, complete, complete_bipartite, cycle, k4_2sum_k4, path, two_sum, wheel
from rigiverify.matroid import is_Rd_connected
from rigiverify.rigidity import GenericConfig, RankOracle, is_Rd_circuit
from rigiverify.stress import (
    bridges,
    has_Rd_bridge,
    is_globally_d_rigid,
    is_minimally_globally_d_rigid,
    is_minimally_Rd_bridgeless,
    is_redundantly_d_rigid,
    shared_stress_profile,
    shared_stress_rank,
    stress_basis,
    stress_matrices,
    stress_matrix,
)

P = DEFAULT_PRIME


def oracle(g, d=2, trials=2):
    return RankOracle(g, GenericConfig(d=d, trials=trials))


def test_stress_basis_sizes():
    assert len(stress_basis(oracle(complete(4)))) == 1
    assert stress_basis(oracle(path(4), d=1)) == []
    assert len(stress_basis(oracle(complete(5)))) == 3


def test_stress_matrix_shape():
    om = stress_matrix(3, [(0, 1), (1, 2)], [2, 5], 101)
    assert om.tolist() == [[2, 99, 0], [99, 7, 96], [0, 96, 5]]


@given(graphs(n_max=7), st.integers(1, 3))
def test_stresses_are_in_equilibrium(g, d):
    o = oracle(g, d)
    t = o.best_trial()
    edges = o.edges_of(o.full)
    coords = o.coordinates(t)
    ptil = np.concatenate([coords, np.ones((g.n, 1), dtype=np.uint64)], axis=1)
    for w in stress_basis(o):
        # vertex equilibrium, computed directly with Python ints
        for v in range(g.n):
            tot = [0] * d
            for (a, b), x in zip(edges, w):
                if v in (a, b):
                    other = b if v == a else a
                    for i in range(d):
                        tot[i] += int(x) * (int(coords[v, i]) - int(coords[other, i]))
            assert all(t % P == 0 for t in tot)
    for om in stress_matrices(o):
        assert np.array_equal(om, om.T)
        assert not matmul(om, ptil, P).any()


def test_s2_examples():
    assert shared_stress_rank(oracle(complete(4))) == 1
    assert shared_stress_rank(oracle(wheel(5))) == 2
    assert shared_stress_rank(oracle(k4_2sum_k4())) == 2
    assert shared_stress_rank(oracle(cycle(5))) == 0


@given(graphs(n_max=7), st.integers(1, 3))
def test_profile_bounds_and_independence(g, d):
    o = oracle(g, d)
    prof = shared_stress_profile(o)
    assert prof.stress_dim == g.m - o.rank()
    assert prof.s + prof.sigma == g.n
    assert prof.trial_s[prof.trial] == prof.s
    if g.n >= d + 1:
        assert d + 1 <= prof.sigma <= g.n
        assert 0 <= prof.s <= g.n - d - 1
    if prof.stress_dim == 0:
        assert prof.s == 0


@given(graphs(n_min=3, n_max=6), st.integers(1, 2), st.data())
def test_stacked_kernel_equals_kernel_of_combinations(g, d, data):
    """The common kernel of all stress matrices equals that of the stacked basis."""
    o = oracle(g, d)
    mats = stress_matrices(o)
    if not mats:
        return
    coeffs = data.draw(st.lists(st.lists(st.integers(0, 50), min_size=len(mats), max_size=len(mats)), min_size=1, max_size=3))
    combos = []
    for c in coeffs:
        acc = np.zeros((g.n, g.n), dtype=object)
        for x, m in zip(c, mats):
            acc = (acc + x * m.astype(object)) % P
        combos.append(acc.astype(np.uint64))
    base = rank(stack(mats, g.n), P)
    assert rank(stack(mats + combos, g.n), P) == base
    assert rank(stack(combos, g.n), P) <= base


@given(graphs(n_max=6), st.integers(1, 3))
def test_circuit_stress_is_unique(g, d):
    o = oracle(g, d)
    if not is_Rd_circuit(o):
        return
    (om,) = stress_matrices(o)
    assert shared_stress_rank(o) == rank(om, P)


@pytest.mark.parametrize(
    "a,b,expected",
    [
        (complete(4), complete(4), 2),
        (complete(4), wheel(5), 3),
        (wheel(5), wheel(5), 4),
        (k4_2sum_k4(), complete(4), 3),
        (k4_2sum_k4(), wheel(5), 4),
    ],
)
def test_two_sum_adds_stress_rank(a, b, expected):
    sa, sb = shared_stress_rank(oracle(a)), shared_stress_rank(oracle(b))
    g = two_sum(a, a.edges[0], b, b.edges[-1])
    o = oracle(g)
    assert is_Rd_circuit(o)
    assert shared_stress_rank(o) == sa + sb == expected


@given(graphs(n_min=2, n_max=6), st.integers(1, 2))
def test_bridges_and_isolated_vertices_leave_s_unchanged(g, d):
    s = shared_stress_rank(oracle(g, d))
    assert shared_stress_rank(oracle(Graph(g.n + 1, g.edges), d)) == s
    pendant = Graph(g.n + 1, g.edges + ((0, g.n),))
    assert shared_stress_rank(oracle(pendant, d)) == s


def test_global_rigidity_examples():
    assert is_globally_d_rigid(oracle(complete_bipartite(3, 4)))
    assert not is_globally_d_rigid(oracle(k4_2sum_k4()))
    for d in (1, 2, 3):
        assert is_globally_d_rigid(oracle(complete(d + 2), d))
        assert is_globally_d_rigid(oracle(complete(d + 1), d))
        assert not is_globally_d_rigid(oracle(complete(d + 1).remove_edge(0, 1), d))


def test_minimal_and_redundant_examples():
    assert is_minimally_globally_d_rigid(oracle(wheel(5)))
    assert is_minimally_globally_d_rigid(oracle(complete_bipartite(3, 4)))
    assert is_redundantly_d_rigid(oracle(complete(4)))
    assert is_minimally_Rd_bridgeless(oracle(complete(4)))
    assert not has_Rd_bridge(oracle(complete(4)))
    o = oracle(complete(4).remove_edge(0, 1))
    assert bridges(o) == o.full


def test_ght_matches_jackson_jordan_in_the_plane():
    """Globally 2-rigid iff 3-connected and R_2-connected, for n >= 4."""
    for n in range(4, 8):
        for g in enumerate_graphs(n):
            o = oracle(g)
            combinatorial = nx.node_connectivity(to_nx(g)) >= 3 and is_Rd_connected(o)
            assert is_globally_d_rigid(o) == combinatorial, g


def test_global_rigidity_on_the_line_is_two_connectivity():
    for n in range(3, 8):
        for g in enumerate_graphs(n):
            assert is_globally_d_rigid(oracle(g, 1)) == (nx.node_connectivity(to_nx(g)) >= 2), g


@pytest.mark.parametrize("d", [1, 2, 3])
def test_hendrickson_necessity(d):
    for n in range(d + 2, 7):
        for g in enumerate_graphs(n):
            o = oracle(g, d)
            if is_globally_d_rigid(o):
                assert is_redundantly_d_rigid(o), g
                assert nx.node_connectivity(to_nx(g)) >= d + 1, g
