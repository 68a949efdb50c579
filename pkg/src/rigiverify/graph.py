"""Simple graphs, named families, gluing constructions and connectivity.

Vertices are ``0..n-1``.  Edges are stored as ``(u, v)`` with ``u < v`` and
kept in lexicographic order; that order is the canonical edge indexing used
by every matrix in the package.  Unordered pairs of ``K_n`` are indexed in the
same lexicographic order (see :func:`pair_index`), so the edge set of a graph
doubles as a bitmask over the pairs of ``K_n``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

Edge = tuple[int, int]


def norm_pair(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


def pair_index(n: int, u: int, v: int) -> int:
    """Position of {u, v} in the lexicographic list of pairs of K_n."""
    if u > v:
        u, v = v, u
    return u * n - u * (u + 1) // 2 + (v - u - 1)


def all_pairs(n: int) -> list[Edge]:
    return list(combinations(range(n), 2))


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...] = ()
    _adj: tuple[frozenset, ...] = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        seen = set()
        for u, v in self.edges:
            e = norm_pair(int(u), int(v))
            if not (0 <= e[0] and e[1] < self.n):
                raise ValueError(f"edge {e} has an endpoint outside 0..{self.n - 1}")
            if e in seen:
                raise ValueError(f"repeated edge {e}")
            seen.add(e)
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        nbrs: list[set] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        object.__setattr__(self, "_adj", tuple(frozenset(s) for s in nbrs))

    # -- basic queries ------------------------------------------------------
    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> frozenset:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and v in self._adj[u]

    def edge_index(self, u: int, v: int) -> int:
        e = norm_pair(u, v)
        try:
            return self.edges.index(e)
        except ValueError:
            raise KeyError(f"{e} is not an edge") from None

    @cached_property
    def mask(self) -> int:
        """Bitmask of the edge set over the pairs of K_n."""
        out = 0
        for u, v in self.edges:
            out |= 1 << pair_index(self.n, u, v)
        return out

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self.n) if not self._adj[v]]

    # -- derived graphs -----------------------------------------------------
    def add_edge(self, u: int, v: int) -> "Graph":
        e = norm_pair(u, v)
        if self.has_edge(*e):
            return self
        return Graph(self.n, self.edges + (e,))

    def remove_edge(self, u: int, v: int) -> "Graph":
        e = norm_pair(u, v)
        if not self.has_edge(*e):
            raise KeyError(f"{e} is not an edge")
        return Graph(self.n, tuple(f for f in self.edges if f != e))

    def remove_edges(self, es: Iterable[Edge]) -> "Graph":
        drop = {norm_pair(*e) for e in es}
        return Graph(self.n, tuple(f for f in self.edges if f not in drop))

    def isolate(self, z: int) -> "Graph":
        """Delete every edge at ``z`` but keep the vertex (labels unchanged)."""
        return Graph(self.n, tuple(e for e in self.edges if z not in e))

    def delete_vertices(self, zs: Iterable[int]) -> "Graph":
        keep = [v for v in range(self.n) if v not in set(zs)]
        return self.induced(keep)

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph on ``vertices``, relabelled in the given order."""
        pos = {v: i for i, v in enumerate(vertices)}
        if len(pos) != len(vertices):
            raise ValueError("repeated vertex")
        es = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return Graph(len(vertices), tuple(es))

    def edge_subgraph(self, es: Iterable[Edge]) -> "Graph":
        """Spanning subgraph with the given edges (vertex set unchanged)."""
        es = [norm_pair(*e) for e in es]
        for e in es:
            if not self.has_edge(*e):
                raise KeyError(f"{e} is not an edge")
        return Graph(self.n, tuple(es))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``perm[i]`` renamed to ``i``."""
        inv = {v: i for i, v in enumerate(perm)}
        return Graph(self.n, tuple((inv[u], inv[v]) for u, v in self.edges))

    def complement(self) -> "Graph":
        return Graph(self.n, tuple(e for e in all_pairs(self.n) if not self.has_edge(*e)))

    def subgraph_edge_count(self, vertices: Iterable[int]) -> int:
        s = set(vertices)
        return sum(1 for u, v in self.edges if u in s and v in s)

    def __str__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def graph_from_mask(n: int, mask: int) -> Graph:
    return Graph(n, tuple(e for k, e in enumerate(all_pairs(n)) if mask >> k & 1))


# --- families ----------------------------------------------------------------


def empty(n: int) -> Graph:
    return Graph(n)


def complete(n: int) -> Graph:
    return Graph(n, tuple(all_pairs(n)))


def complete_bipartite(a: int, b: int) -> Graph:
    """Parts ``0..a-1`` and ``a..a+b-1``."""
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def path(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)) + ((0, n - 1),))


def wheel(n: int) -> Graph:
    """Hub 0 joined to the rim cycle 1..n-1 (n vertices in total)."""
    if n < 4:
        raise ValueError("a wheel needs at least 4 vertices")
    rim = [(i, i + 1) for i in range(1, n - 1)] + [(1, n - 1)]
    return Graph(n, tuple([(0, i) for i in range(1, n)] + rim))


def k4q_hat(q: int) -> Graph:
    """q copies of K_4 glued along the pair {0, 1}; copy i adds 2+2i, 3+2i."""
    if q < 1:
        raise ValueError("q must be at least 1")
    es = {(0, 1)}
    for i in range(q):
        a, b = 2 + 2 * i, 3 + 2 * i
        es |= {(0, a), (0, b), (1, a), (1, b), (a, b)}
    return Graph(2 + 2 * q, tuple(es))


def k4q(q: int) -> Graph:
    """:func:`k4q_hat` with the edge 01 between the glued pair removed."""
    return k4q_hat(q).remove_edge(0, 1)


def k4_plus() -> Graph:
    """K_4 on 0..3 plus vertex 4 joined to 0 and 1."""
    return Graph(5, tuple(all_pairs(4)) + ((0, 4), (1, 4)))


def k4_2sum_k4() -> Graph:
    return two_sum(complete(4), (0, 1), complete(4), (0, 1))


def two_k4_vertex_edge() -> Graph:
    """Two K_4's sharing vertex 0 ({0,1,2,3} and {0,4,5,6}) plus the edge 14."""
    a = [(u, v) for u, v in combinations((0, 1, 2, 3), 2)]
    b = [(u, v) for u, v in combinations((0, 4, 5, 6), 2)]
    return Graph(7, tuple(a + b + [(1, 4)]))


FAMILIES = {
    "empty": (empty, 1),
    "complete": (complete, 1),
    "complete_bipartite": (complete_bipartite, 2),
    "path": (path, 1),
    "cycle": (cycle, 1),
    "wheel": (wheel, 1),
    "K4q": (k4q, 1),
    "K4q_hat": (k4q_hat, 1),
    "K4_plus": (k4_plus, 0),
    "K4_2sum_K4": (k4_2sum_k4, 0),
    "two_K4_vertex_edge": (two_k4_vertex_edge, 0),
}


def construct_family(name: str, params: Sequence[int] = ()) -> Graph:
    if name not in FAMILIES:
        raise KeyError(f"unknown family {name!r}; known: {', '.join(FAMILIES)}")
    fn, arity = FAMILIES[name]
    params = [int(x) for x in params]
    if len(params) != arity:
        raise ValueError(f"family {name} takes {arity} integer parameter(s), got {len(params)}")
    if any(x < 0 for x in params):
        raise ValueError("family parameters must be non-negative")
    return fn(*params)


# --- constructions -----------------------------------------------------------


def cone(g: Graph) -> Graph:
    """Add vertex ``n`` adjacent to every vertex of ``g``."""
    return Graph(g.n + 1, g.edges + tuple((v, g.n) for v in range(g.n)))


def _glue(g1: Graph, e1: Edge, g2: Graph, e2: Edge) -> tuple[Graph, Edge]:
    u1, v1 = e1
    u2, v2 = e2
    if not g1.has_edge(u1, v1):
        raise KeyError(f"{e1} is not an edge of the first graph")
    if not g2.has_edge(u2, v2):
        raise KeyError(f"{e2} is not an edge of the second graph")
    # g2's u2 -> u1, v2 -> v1, remaining vertices appended in increasing order
    rest = [x for x in range(g2.n) if x not in (u2, v2)]
    lab = {u2: u1, v2: v1}
    lab.update({x: g1.n + i for i, x in enumerate(rest)})
    es = set(g1.edges)
    es |= {norm_pair(lab[a], lab[b]) for a, b in g2.edges}
    return Graph(g1.n + len(rest), tuple(es)), norm_pair(u1, v1)


def parallel_connection(g1: Graph, e1: Edge, g2: Graph, e2: Edge) -> Graph:
    """Identify u1~u2, v1~v2 keeping the common edge once.

    ``g1`` keeps its labels; the other vertices of ``g2`` are appended in
    increasing order of their ``g2`` labels.
    """
    return _glue(g1, e1, g2, e2)[0]


def two_sum(g1: Graph, e1: Edge, g2: Graph, e2: Edge) -> Graph:
    """Parallel connection with the identified edge deleted."""
    h, e = _glue(g1, e1, g2, e2)
    return h.remove_edge(*e)


def edge_split(g: Graph, e: Edge, d: int, extra: Sequence[int]) -> Graph:
    """Subdivide ``e`` by new vertex ``n`` and join it to ``extra`` (d-1 vertices)."""
    u, v = norm_pair(*e)
    if not g.has_edge(u, v):
        raise KeyError(f"{e} is not an edge")
    extra = [int(x) for x in extra]
    if len(extra) != d - 1:
        raise ValueError(f"edge split in dimension {d} needs {d - 1} extra vertices")
    if len(set(extra)) != len(extra) or u in extra or v in extra:
        raise ValueError("extra vertices must be distinct and avoid the split edge")
    if any(not 0 <= x < g.n for x in extra):
        raise ValueError("extra vertex out of range")
    w = g.n
    es = [f for f in g.edges if f != (u, v)] + [(u, w), (v, w)] + [(x, w) for x in extra]
    return Graph(g.n + 1, tuple(es))


# --- connectivity ------------------------------------------------------------


def connected_components(g: Graph, removed: Iterable[int] = ()) -> list[list[int]]:
    gone = set(removed)
    seen = set(gone)
    comps = []
    for s in range(g.n):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        q = deque([s])
        while q:
            x = q.popleft()
            for y in g.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    q.append(y)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def _local_connectivity(g: Graph, u: int, v: int, cutoff: int | None = None) -> int:
    """Max number of internally disjoint u-v paths, u and v nonadjacent.

    Unit-capacity max flow on the split graph (x_in = 2x, x_out = 2x+1).
    """
    cap: dict[int, dict[int, int]] = {}

    def arc(a, b, c):
        cap.setdefault(a, {})
        cap.setdefault(b, {})
        cap[a][b] = cap[a].get(b, 0) + c
        cap[b].setdefault(a, 0)

    big = g.n + 1
    for x in range(g.n):
        arc(2 * x, 2 * x + 1, big if x in (u, v) else 1)
    for a, b in g.edges:
        arc(2 * a + 1, 2 * b, big)
        arc(2 * b + 1, 2 * a, big)
    s, t = 2 * u + 1, 2 * v
    if s not in cap or t not in cap:
        return 0
    flow = 0
    while cutoff is None or flow < cutoff:
        parent = {s: None}
        q = deque([s])
        while q and t not in parent:
            x = q.popleft()
            for y, c in cap[x].items():
                if c > 0 and y not in parent:
                    parent[y] = x
                    q.append(y)
        if t not in parent:
            break
        y = t
        while parent[y] is not None:
            x = parent[y]
            cap[x][y] -= 1
            cap[y][x] += 1
            y = x
        flow += 1
    return flow


def kappa(g: Graph, u: int, v: int, cutoff: int | None = None) -> int:
    """Internally disjoint u-v paths.

    Adjacent pairs count the edge itself: ``1 + kappa(g - uv, u, v)``.
    With ``cutoff`` the search stops once that many paths are found.
    """
    if u == v:
        raise ValueError("kappa needs two distinct vertices")
    if g.has_edge(u, v):
        rest = None if cutoff is None else cutoff - 1
        return 1 + _local_connectivity(g.remove_edge(u, v), u, v, rest)
    return _local_connectivity(g, u, v, cutoff)


def vertex_connectivity(g: Graph) -> int:
    if g.is_complete():
        return max(g.n - 1, 0)
    return min(
        _local_connectivity(g, u, v)
        for u, v in combinations(range(g.n), 2)
        if not g.has_edge(u, v)
    )


def is_k_connected(g: Graph, k: int) -> bool:
    """More than k vertices and no separating set of fewer than k vertices."""
    if k <= 0:
        return True
    if g.n <= k:
        return False
    if g.is_complete():
        return True
    return all(
        _local_connectivity(g, u, v, cutoff=k) >= k
        for u, v in combinations(range(g.n), 2)
        if not g.has_edge(u, v)
    )


def is_minimally_k_connected(g: Graph, k: int) -> bool:
    return is_k_connected(g, k) and all(
        not is_k_connected(g.remove_edge(*e), k) for e in g.edges
    )


def two_separations(g: Graph) -> list[tuple[Edge, tuple[frozenset, frozenset]]]:
    """Every pair {u, v} whose removal disconnects the remaining vertices.

    For each such pair one separation is returned: the first side is the
    component of ``g - {u, v}`` holding the smallest vertex, the second side
    is everything else; both sides include u and v.
    """
    out = []
    for u, v in combinations(range(g.n), 2):
        comps = connected_components(g, removed=(u, v))
        if len(comps) >= 2:
            a = frozenset(comps[0]) | {u, v}
            b = frozenset(x for c in comps[1:] for x in c) | {u, v}
            out.append(((u, v), (a, b)))
    return out


def small_separators(g: Graph, max_size: int, containing: Iterable[int] = ()) -> list[tuple[frozenset, list[list[int]]]]:
    """Vertex sets X (|X| <= max_size, X contains ``containing``) with g - X disconnected.

    Returns (X, components of g - X) pairs; exhaustive, intended for n <= 12.
    """
    if g.n > 12:
        raise ValueError("small separator search is limited to n <= 12")
    base = sorted(set(containing))
    others = [x for x in range(g.n) if x not in base]
    out = []
    for k in range(0, max_size - len(base) + 1):
        for extra in combinations(others, k):
            x = frozenset(base) | frozenset(extra)
            comps = connected_components(g, removed=x)
            if len(comps) >= 2:
                out.append((x, comps))
    return out
