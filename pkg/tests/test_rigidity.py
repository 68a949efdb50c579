from itertools import combinations

import networkx as nx
import numpy as np
import pytest
from conftest import graphs, to_nx
from hypothesis import given
from hypothesis import strategies as st

from rigiverify.graph import complete, cone, cycle, k4q, path, wheel
from rigiverify.rigidity import (
    GenericConfig,
    RankOracle,
    fundamental_circuit,
    generic_rank,
    is_d_linked,
    is_d_rigid,
    is_Rd_bridge,
    is_Rd_circuit,
    is_Rd_independent,
    maxwell_violations,
    random_coordinates,
    rank_complete,
    rigidity_matrix,
    shrink_to_circuit,
)


def float_rank(g, d, seed=0):
    """Rank of a real rigidity matrix at Gaussian coordinates."""
    if not g.m:
        return 0
    x = np.random.default_rng(seed).standard_normal((g.n, d))
    m = np.zeros((g.m, d * g.n))
    for k, (u, v) in enumerate(g.edges):
        m[k, u * d : (u + 1) * d] = x[u] - x[v]
        m[k, v * d : (v + 1) * d] = x[v] - x[u]
    return int(np.linalg.matrix_rank(m))


def laman_independent(g):
    """Every vertex set of size k >= 2 spans at most 2k - 3 edges."""
    for k in range(2, g.n + 1):
        for S in combinations(range(g.n), k):
            if g.subgraph_edge_count(S) > 2 * k - 3:
                return False
    return True


def test_config_validation():
    with pytest.raises(ValueError):
        GenericConfig(d=0)
    with pytest.raises(ValueError):
        GenericConfig(trials=0)
    with pytest.raises(ValueError):
        GenericConfig(seed=-1)


def test_rank_complete():
    assert [rank_complete(n, 2) for n in range(1, 7)] == [0, 1, 3, 5, 7, 9]
    assert rank_complete(5, 3) == 9
    assert rank_complete(4, 3) == 6


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("n", range(1, 8))
def test_complete_graph_rank(n, d):
    assert generic_rank(RankOracle(complete(n), GenericConfig(d=d))) == rank_complete(n, d)


def test_named_examples():
    cfg = GenericConfig(d=2)
    assert is_d_rigid(RankOracle(complete(4).remove_edge(0, 1), cfg))
    assert is_Rd_independent(RankOracle(complete(4).remove_edge(0, 1), cfg))
    assert is_Rd_circuit(RankOracle(complete(4), cfg))
    assert is_Rd_circuit(RankOracle(wheel(5), cfg))
    assert not is_d_rigid(RankOracle(cycle(4), cfg))
    o = RankOracle(k4q(2), cfg)
    assert is_d_rigid(o) and not is_Rd_independent(o)
    assert not is_Rd_circuit(RankOracle(complete(5), cfg))
    assert is_Rd_circuit(RankOracle(complete(5), GenericConfig(d=3)))


@given(graphs())
def test_d1_rank_is_forest_rank(g):
    expected = g.n - nx.number_connected_components(to_nx(g))
    assert generic_rank(RankOracle(g, GenericConfig(d=1))) == expected


@given(graphs(n_max=7))
def test_d2_independence_is_laman(g):
    assert is_Rd_independent(RankOracle(g, GenericConfig(d=2))) == laman_independent(g)


@given(graphs(n_max=7), st.integers(2, 3))
def test_rank_matches_real_coordinates(g, d):
    assert generic_rank(RankOracle(g, GenericConfig(d=d))) == float_rank(g, d)


@given(graphs(n_max=6), st.integers(1, 3))
def test_rank_axioms(g, d):
    o = RankOracle(g, GenericConfig(d=d))
    F = g.mask
    r = o.rank(F)
    assert 0 <= r <= g.m
    for k in o.rows(F):
        # unit increase
        assert r - o.rank(F & ~(1 << k)) in (0, 1)
    rows = o.rows(F)
    if len(rows) >= 2:
        a, b = F & ~(1 << rows[0]), F & ~(1 << rows[-1])
        assert o.rank(a) + o.rank(b) >= o.rank(a | b) + o.rank(a & b)


@given(graphs(n_max=6), st.integers(1, 3))
def test_cone_raises_rank_by_n(g, d):
    r = generic_rank(RankOracle(g, GenericConfig(d=d)))
    r_cone = generic_rank(RankOracle(cone(g), GenericConfig(d=d + 1)))
    assert r_cone == r + g.n


def test_coordinates_are_deterministic():
    cfg = GenericConfig(d=3, seed=42)
    a = random_coordinates(6, cfg, 0)
    assert np.array_equal(a, random_coordinates(6, cfg, 0))
    assert not np.array_equal(a, random_coordinates(6, cfg, 1))
    assert not np.array_equal(a, random_coordinates(6, cfg.with_seed(43), 0))
    assert a.dtype == np.uint64 and (a < cfg.prime).all()


def test_rigidity_matrix_shape_and_rows():
    g = path(3)
    m = rigidity_matrix(g, [[1, 2], [4, 6], [0, 0]], p=101)
    assert m.shape == (2, 6)
    assert list(m[0]) == [101 - 3, 101 - 4, 3, 4, 0, 0]
    with pytest.raises(ValueError):
        rigidity_matrix(g, [[1, 2], [3, 4]], p=101)


def test_linked_and_bridge():
    cfg = GenericConfig(d=2)
    o = RankOracle(k4q(2), cfg)
    assert is_d_linked(o, 0, 1)
    assert is_d_linked(o, 2, 4)  # rigid, so every pair is linked
    assert not is_d_linked(RankOracle(cycle(4), cfg), 0, 2)
    o = RankOracle(complete(4).remove_edge(0, 1), cfg)
    assert is_d_linked(o, 0, 1)
    assert is_Rd_bridge(o, (0, 2))
    with pytest.raises(KeyError):
        is_Rd_bridge(o, (0, 1))
    with pytest.raises(ValueError):
        is_d_linked(o, 2, 2)


def test_fundamental_circuit_in_k4():
    o = RankOracle(complete(4), GenericConfig(d=2))
    e = o.bit(0, 1)
    B = o.full & ~e
    assert fundamental_circuit(o, e, B) == o.full
    with pytest.raises(ValueError):
        fundamental_circuit(o, e, o.full)


@given(graphs(n_max=6), st.integers(1, 3))
def test_shrink_returns_a_circuit(g, d):
    o = RankOracle(g, GenericConfig(d=d))
    if is_Rd_independent(o):
        with pytest.raises(ValueError):
            shrink_to_circuit(o, o.full)
        return
    C = shrink_to_circuit(o, o.full)
    assert C & ~o.full == 0
    assert is_Rd_circuit(o, C)


@given(graphs(n_max=6))
def test_fundamental_supports_are_circuits(g):
    o = RankOracle(g, GenericConfig(d=2))
    basis, circuits = o.fundamental_supports()
    assert len(basis) == o.rank()
    bmask = sum(1 << k for k in basis)
    for e, sup in circuits:
        C = sum(1 << k for k in sup)
        assert is_Rd_circuit(o, C)
        assert C == fundamental_circuit(o, 1 << e, bmask)


def test_maxwell_on_k5():
    v = maxwell_violations(complete(5), 2)
    # K4 spans 6 > 5 edges, K5 spans 10 > 7
    assert set(v) == {frozenset(S) for k in (4, 5) for S in combinations(range(5), k)}
    assert maxwell_violations(complete(4), 2) == [frozenset(range(4))]
    assert maxwell_violations(wheel(5), 2) == [frozenset(range(5))]
    assert maxwell_violations(cycle(5), 2) == []
    assert maxwell_violations(complete(5), 3) == [frozenset(range(5))]
