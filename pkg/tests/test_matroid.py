import pytest
from conftest import graphs
from hypothesis import given
from hypothesis import strategies as st

from rigiverify.enumeration import enumerate_graphs
from rigiverify.graph import Graph, complete, k4q, k4q_hat, path, wheel
from rigiverify.matroid import (
    components,
    components_exhaustive,
    ear_decomposition,
    enumerate_circuits,
    is_minimally_Rd_connected,
    is_Rd_connected,
    is_two_cocircuit,
    violates_e3,
)
from rigiverify.rigidity import GenericConfig, RankOracle, is_Rd_circuit


def two_k4_at_vertex():
    a = complete(4).edges
    b = tuple((u + 3, v + 3) for u, v in complete(4).edges)
    return Graph(7, a + b)


def oracle(g, d=2):
    return RankOracle(g, GenericConfig(d=d))


# --- components --------------------------------------------------------------------


def test_components_examples():
    o = oracle(two_k4_at_vertex())
    dec = components(o)
    assert len(dec.components) == 2 and not any(dec.trivial)
    assert {frozenset(o.edges_of(c)) for c in dec.components} == {
        frozenset(complete(4).edges),
        frozenset((u + 3, v + 3) for u, v in complete(4).edges),
    }
    assert dec == components_exhaustive(o)

    dec = components(oracle(path(5), d=1))
    assert len(dec.components) == 4 and all(dec.trivial)

    o = oracle(k4q(3))
    assert components(o).components == [o.full]


@given(graphs(n_max=7, max_edges=12), st.integers(1, 2))
def test_components_match_exhaustive(g, d):
    o = oracle(g, d)
    dec = components(o)
    dec.validate(o, o.full)
    assert dec == components_exhaustive(o)


def test_circuit_count_k5():
    assert len(enumerate_circuits(oracle(complete(5)))) == 20
    assert all(is_Rd_circuit(oracle(complete(5)), c) for c in enumerate_circuits(oracle(complete(5))))


# --- connectivity ---------------------------------------------------------------------


def test_connectivity_examples():
    assert is_Rd_connected(oracle(complete(4)))
    assert is_minimally_Rd_connected(oracle(complete(4)))
    o = oracle(complete(5))
    assert is_Rd_connected(o) and not is_minimally_Rd_connected(o)
    assert not is_Rd_connected(oracle(two_k4_at_vertex()))
    # a circuit plus an isolated vertex is not connected as a graph property
    assert not is_Rd_connected(oracle(Graph(5, complete(4).edges)))
    assert is_Rd_connected(oracle(k4q_hat(2)))


def test_dimension_dropping_on_small_graphs():
    for g in enumerate_graphs(6):
        if is_Rd_connected(oracle(g, 2)):
            assert is_Rd_connected(oracle(g, 1)), g


def test_two_cocircuit_examples():
    o = oracle(wheel(5))
    bits = [1 << k for k in o.rows(o.full)]
    assert all(is_two_cocircuit(o, e, f) for e in bits for f in bits if e != f)
    o = oracle(path(3), d=1)
    e, f = (1 << k for k in o.rows(o.full))
    assert not is_two_cocircuit(o, e, f)
    o = oracle(two_k4_at_vertex())
    assert not is_two_cocircuit(o, o.bit(0, 1), o.bit(4, 5))
    with pytest.raises(ValueError):
        is_two_cocircuit(o, o.bit(0, 1), o.bit(0, 1))
    with pytest.raises(KeyError):
        is_two_cocircuit(o, o.bit(0, 1), o.bit(0, 6))


@given(graphs(n_max=6), st.data())
def test_two_cocircuit_matches_definition(g, data):
    """Oracle: {e, f} is a cocircuit iff every basis meets it and no single element does."""
    if g.m < 2:
        return
    o = oracle(g)
    e, f = data.draw(st.lists(st.sampled_from(o.rows(o.full)), min_size=2, max_size=2, unique=True))
    E, Fb = 1 << e, 1 << f
    top = o.rank()
    hits_pair = o.rank(o.full & ~(E | Fb)) < top
    hits_e = o.rank(o.full & ~E) < top
    hits_f = o.rank(o.full & ~Fb) < top
    assert is_two_cocircuit(o, E, Fb) == (hits_pair and not hits_e and not hits_f)


# --- ear decompositions -------------------------------------------------------------


def test_ear_examples():
    assert ear_decomposition(oracle(complete(4))).t == 1
    assert ear_decomposition(oracle(k4q(2))).t == 1
    o = oracle(complete(5))
    ears = ear_decomposition(o)
    assert ears.check(o, o.full) == []
    assert sum(ears.lobe_sizes()) == 10
    with pytest.raises(ValueError):
        ear_decomposition(oracle(two_k4_at_vertex()))


def _rd_connected_graphs(n_max, d=2):
    for n in range(2, n_max + 1):
        for g in enumerate_graphs(n):
            o = oracle(g, d)
            if is_Rd_connected(o):
                yield g, o


@pytest.mark.parametrize("d", [1, 2])
def test_ears_satisfy_e1_e2_e3(d):
    seen = 0
    for g, o in _rd_connected_graphs(6, d):
        ears = ear_decomposition(o)
        assert ears.check(o, o.full) == [], g
        if g.m <= 12:
            assert violates_e3(o, ears) == [], g
            seen += 1
    assert seen > 0


def test_minimally_connected_lobes_and_prefixes():
    count = 0
    for g, o in _rd_connected_graphs(6):
        if not is_minimally_Rd_connected(o):
            continue
        count += 1
        ears = ear_decomposition(o)
        assert all(s >= 2 for s in ears.lobe_sizes()), g
        for D in ears.prefixes:
            assert is_minimally_Rd_connected(o, D), g
    assert count > 0
