import networkx as nx
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from rigiverify.graph import Graph, all_pairs, graph_from_mask
from rigiverify.rigidity import GenericConfig

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow], max_examples=60)
settings.load_profile("default")

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion."""

    def record(name: str, passed: bool, detail: str = "") -> None:
        _ACCEPTANCE.append((name, passed, detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}".rstrip())


@pytest.fixture
def cfg2():
    return GenericConfig(d=2)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def from_nx(h: nx.Graph) -> Graph:
    nodes = sorted(h.nodes())
    pos = {v: i for i, v in enumerate(nodes)}
    return Graph(len(nodes), tuple((pos[a], pos[b]) for a, b in h.edges()))


@st.composite
def graphs(draw, n_min=1, n_max=7, max_edges=None):
    """Labeled graphs as a uniformly drawn subset of the K_n pairs."""
    n = draw(st.integers(n_min, n_max))
    pairs = all_pairs(n)
    mask = draw(st.integers(0, (1 << len(pairs)) - 1)) if pairs else 0
    if max_edges is not None:
        while bin(mask).count("1") > max_edges:
            mask &= mask - 1
    return graph_from_mask(n, mask)
