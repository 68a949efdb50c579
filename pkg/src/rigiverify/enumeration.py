"""Canonical labelling and isomorphism-free enumeration of small graphs.

The canonical form of a graph is its relabelling whose graph6-order
upper-triangle bit string is lexicographically smallest over all vertex
permutations.  Built-in enumeration stops at 7 vertices; 8-vertex streams
are produced by :func:`extend_by_vertex` from the complete 7-vertex list, and
anything larger should come from an external generator such as nauty's
``geng`` in graph6 form.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Iterator

import numpy as np

from ._kernels import canonical_perm
from .graph import Graph

MAX_BUILTIN_N = 7


class EnumerationLimitError(ValueError):
    pass


def adjacency(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.uint8)
    for u, v in g.edges:
        a[u, v] = a[v, u] = 1
    return a


def _code_of(g: Graph) -> int:
    code = 0
    for j in range(1, g.n):
        for i in range(j):
            code = (code << 1) | (1 if g.has_edge(i, j) else 0)
    return code


def canonical_form(g: Graph) -> Graph:
    return g.relabel(canonical_perm(adjacency(g)).tolist())


def canonical_code(g: Graph) -> int:
    """Integer value of the minimal bit string (fixes n implicitly)."""
    return _code_of(canonical_form(g))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if (g.n, g.m) != (h.n, h.m):
        return False
    if sorted(g.degree(v) for v in range(g.n)) != sorted(h.degree(v) for v in range(h.n)):
        return False
    return canonical_code(g) == canonical_code(h)


def _children(parent: Graph, min_edges: int) -> Iterator[Graph]:
    """Add vertex ``n`` in every way that leaves it of minimum degree."""
    n = parent.n
    base_deg = [parent.degree(v) for v in range(n)]
    for k in range(n + 1):
        if parent.m + k < min_edges:
            continue
        for nbrs in combinations(range(n), k):
            s = set(nbrs)
            if any(base_deg[v] + (v in s) < k for v in range(n)):
                continue
            yield Graph(n + 1, parent.edges + tuple((v, n) for v in nbrs))


def extend_by_vertex(parents: Iterable[Graph], min_edges: int = 0) -> list[Graph]:
    """All graphs on n+1 vertices (>= ``min_edges`` edges), one per class.

    ``parents`` must contain a representative of every isomorphism class on
    n vertices; every graph arises from deleting one of its minimum-degree
    vertices, so the output is complete.  Sorted by canonical code.
    """
    seen: dict[int, Graph] = {}
    for p in parents:
        for child in _children(p, min_edges):
            canon = canonical_form(child)
            code = _code_of(canon)
            if code not in seen:
                seen[code] = canon
    return [seen[c] for c in sorted(seen)]


@lru_cache(maxsize=None)
def _all_graphs(n: int) -> tuple[Graph, ...]:
    if n == 0:
        return (Graph(0),)
    return tuple(extend_by_vertex(_all_graphs(n - 1)))


def enumerate_graphs(n: int, filter: Callable[[Graph], bool] | None = None) -> Iterator[Graph]:
    """One canonical representative per isomorphism class on n <= 7 vertices.

    Order is ascending canonical code, hence deterministic.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > MAX_BUILTIN_N:
        raise EnumerationLimitError(
            f"built-in enumeration stops at n={MAX_BUILTIN_N}; use extend_by_vertex "
            "for n=8 or pipe graph6 from an external generator (e.g. nauty geng)"
        )
    for g in _all_graphs(n):
        if filter is None or filter(g):
            yield g


def enumerate_up_to(n_max: int, n_min: int = 1, filter: Callable[[Graph], bool] | None = None) -> Iterator[Graph]:
    for n in range(n_min, n_max + 1):
        yield from enumerate_graphs(n, filter)
