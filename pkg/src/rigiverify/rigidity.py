"""Rigidity matrices and the randomized generic rank oracle.

Generic coordinates are emulated by uniform random points of F_p.  A
non-generic draw can only lower a rank, so every reported rank is the
maximum over ``trials`` independent draws.

Edge subsets are integer bitmasks over the pairs of ``K_n`` (see
:func:`rigiverify.graph.pair_index`).  One oracle therefore answers queries
for the graph, for ``G + uv`` and for every spanning subgraph, all with the
same coordinates.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .ffalgebra import DEFAULT_PRIME, prime_field
from .graph import Edge, Graph, all_pairs, norm_pair, pair_index

log = logging.getLogger(__name__)

MAX_DIM = 6


@dataclass(frozen=True)
class GenericConfig:
    d: int = 2
    prime: int = DEFAULT_PRIME
    seed: int = 1
    trials: int = 2

    def __post_init__(self):
        if not 1 <= self.d <= MAX_DIM:
            raise ValueError(f"dimension must be in 1..{MAX_DIM}, got {self.d}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")

    def with_dim(self, d: int) -> "GenericConfig":
        return GenericConfig(d, self.prime, self.seed, self.trials)

    def with_seed(self, seed: int) -> "GenericConfig":
        return GenericConfig(self.d, self.prime, seed, self.trials)

    def with_trials(self, trials: int) -> "GenericConfig":
        return GenericConfig(self.d, self.prime, self.seed, trials)


def rank_complete(n: int, d: int) -> int:
    """r_d(K_n)."""
    if n <= d + 1:
        return comb(n, 2)
    return d * n - comb(d + 1, 2)


def random_coordinates(n: int, config: GenericConfig, trial: int) -> np.ndarray:
    """(n, d) residues; a function of (seed, n, d, trial) only."""
    ss = np.random.SeedSequence([config.seed, n, config.d, trial])
    return np.random.default_rng(ss).integers(0, config.prime, size=(n, config.d), dtype=np.uint64)


def rigidity_matrix(g: Graph, coords, p: int = DEFAULT_PRIME, edges: Sequence[Edge] | None = None) -> np.ndarray:
    """|E| x dn matrix; row uv holds p(u)-p(v) in u's block and p(v)-p(u) in v's."""
    c = np.asarray(coords, dtype=object)
    if c.ndim == 1:
        if c.size % max(g.n, 1) and g.n:
            raise ValueError("coordinate vector length is not a multiple of n")
        d = c.size // g.n if g.n else 0
        c = c.reshape(g.n, d)
    if c.shape[0] != g.n:
        raise ValueError(f"expected coordinates for {g.n} vertices, got {c.shape[0]}")
    d = c.shape[1]
    rows = g.edges if edges is None else edges
    out = np.zeros((len(rows), d * g.n), dtype=object)
    for k, (u, v) in enumerate(rows):
        diff = c[u] - c[v]
        out[k, u * d : (u + 1) * d] = diff
        out[k, v * d : (v + 1) * d] = -diff
    return np.asarray(np.mod(out, p), dtype=np.uint64)


class RankOracle:
    """Cached generic rank r_d on edge subsets of ``graph``'s vertex set."""

    def __init__(self, graph: Graph, config: GenericConfig, debug: bool = False):
        self.graph = graph
        self.config = config
        self.n = graph.n
        self.d = config.d
        self.debug = debug
        self.pairs = all_pairs(self.n)
        self.field = prime_field(config.prime)
        self.full = graph.mask
        kn = Graph(self.n, tuple(self.pairs))
        self._plain = []
        self._enc = []
        for t in range(config.trials):
            m = rigidity_matrix(kn, random_coordinates(self.n, config, t), config.prime)
            self._plain.append(m)
            self._enc.append(self.field.encode(m))
        self._cache: dict[int, tuple[int, int]] = {}

    # -- masks --------------------------------------------------------------
    def bit(self, u: int, v: int) -> int:
        return 1 << pair_index(self.n, u, v)

    def mask_of(self, edges: Iterable[Edge]) -> int:
        out = 0
        for u, v in edges:
            out |= self.bit(u, v)
        return out

    def rows(self, mask: int) -> list[int]:
        out = []
        k = 0
        while mask:
            if mask & 1:
                out.append(k)
            mask >>= 1
            k += 1
        return out

    def edges_of(self, mask: int) -> list[Edge]:
        return [self.pairs[k] for k in self.rows(mask)]

    def graph_of(self, mask: int) -> Graph:
        return Graph(self.n, tuple(self.edges_of(mask)))

    # -- rank ---------------------------------------------------------------
    def _rank_and_trial(self, mask: int) -> tuple[int, int]:
        hit = self._cache.get(mask)
        if hit is not None:
            return hit
        rows = self.rows(mask)
        best, arg = -1, 0
        for t, m in enumerate(self._enc):
            r = self.field.rank(m[rows]) if rows else 0
            if r > best:
                best, arg = r, t
        if self.debug:
            assert best <= len(rows), "rank exceeds subset size"
        self._cache[mask] = (best, arg)
        return best, arg

    def rank(self, mask: int | None = None) -> int:
        return self._rank_and_trial(self.full if mask is None else mask)[0]

    def best_trial(self, mask: int | None = None) -> int:
        return self._rank_and_trial(self.full if mask is None else mask)[1]

    def trial_ranks(self, mask: int | None = None) -> list[int]:
        rows = self.rows(self.full if mask is None else mask)
        return [self.field.rank(m[rows]) if rows else 0 for m in self._enc]

    def matrix(self, trial: int, mask: int | None = None) -> np.ndarray:
        """Plain-residue rigidity matrix rows of ``mask`` at one trial."""
        return self._plain[trial][self.rows(self.full if mask is None else mask)]

    def coordinates(self, trial: int) -> np.ndarray:
        return random_coordinates(self.n, self.config, trial)

    def fundamental_supports(self, mask: int | None = None) -> tuple[list[int], list[tuple[int, list[int]]]]:
        """Greedy basis and the fundamental circuits of the other elements.

        Works on one trial matrix (the best for ``mask``): reducing the
        transpose puts the lexicographically first basis on the pivot
        columns, and each free column's kernel vector is supported on that
        element's fundamental circuit.  Returns (basis pair indices,
        [(element, circuit pair indices)]).
        """
        mask = self.full if mask is None else mask
        rows = self.rows(mask)
        if not rows:
            return [], []
        t = self.best_trial(mask)
        red, piv = self.field.rref(np.ascontiguousarray(self._enc[t][rows].T))
        piv = [int(x) for x in piv]
        pivset = set(piv)
        basis = [rows[i] for i in piv]
        circuits = []
        for f in range(len(rows)):
            if f in pivset:
                continue
            sup = [rows[f]] + [rows[c] for i, c in enumerate(piv) if red[i, f] != 0]
            circuits.append((rows[f], sup))
        return basis, circuits


# --- predicates --------------------------------------------------------------


def _mask(oracle: RankOracle, F: int | None) -> int:
    return oracle.full if F is None else F


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _covers_all_vertices(oracle: RankOracle, F: int) -> bool:
    seen = set()
    for u, v in oracle.edges_of(F):
        seen.add(u)
        seen.add(v)
    return len(seen) == oracle.n


def generic_rank(oracle: RankOracle, F: int | None = None) -> int:
    return oracle.rank(_mask(oracle, F))


def is_d_rigid(oracle: RankOracle, F: int | None = None) -> bool:
    return oracle.rank(_mask(oracle, F)) == rank_complete(oracle.n, oracle.d)


def is_Rd_independent(oracle: RankOracle, F: int | None = None) -> bool:
    F = _mask(oracle, F)
    return oracle.rank(F) == _popcount(F)


def is_Rd_circuit(oracle: RankOracle, F: int | None = None) -> bool:
    """Circuit test.  With ``F`` omitted the graph must also have no isolated
    vertices; an explicit ``F`` is read as an edge-induced subgraph."""
    whole = F is None
    F = _mask(oracle, F)
    size = _popcount(F)
    if size == 0 or oracle.rank(F) != size - 1:
        return False
    for k in oracle.rows(F):
        if oracle.rank(F & ~(1 << k)) != size - 1:
            return False
    return not whole or _covers_all_vertices(oracle, F)


def is_Rd_bridge(oracle: RankOracle, e: Edge, F: int | None = None) -> bool:
    F = _mask(oracle, F)
    b = oracle.bit(*e)
    if not F & b:
        raise KeyError(f"{norm_pair(*e)} is not in the edge set")
    return oracle.rank(F & ~b) == oracle.rank(F) - 1


def is_d_linked(oracle: RankOracle, u: int, v: int, F: int | None = None) -> bool:
    if u == v:
        raise ValueError("linkedness needs two distinct vertices")
    F = _mask(oracle, F)
    b = oracle.bit(u, v)
    if F & b:
        return True
    return oracle.rank(F | b) == oracle.rank(F)


def fundamental_circuit(oracle: RankOracle, e: int, B: int) -> int:
    """C(e, B) for an independent B and an element bit ``e`` outside B."""
    size = _popcount(B)
    if e & B or _popcount(e) != 1:
        raise ValueError("e must be a single element outside B")
    if oracle.rank(B) != size:
        raise ValueError("B is not independent")
    if oracle.rank(B | e) != size:
        raise ValueError("B + e is independent; no fundamental circuit")
    out = e
    for k in oracle.rows(B):
        if oracle.rank((B | e) & ~(1 << k)) == size:
            out |= 1 << k
    return out


def shrink_to_circuit(oracle: RankOracle, F: int, keep: int = 0) -> int:
    """A circuit C with keep <= C <= F, by greedy deletion in canonical order.

    With ``keep`` empty, F must be dependent and the result is a minimal
    dependent subset.  Otherwise ``keep`` must be a circuit of the
    contraction by ``F - keep``; an element z is dropped whenever ``keep``
    stays dependent after contracting the remaining elements only.
    """
    if keep & ~F:
        raise ValueError("keep must be a subset of F")
    r = oracle.rank
    if keep == 0:
        if r(F) == _popcount(F):
            raise ValueError("F is independent; it contains no circuit")
        cur = F
        for k in oracle.rows(F):
            trial = cur & ~(1 << k)
            if r(trial) < _popcount(trial):
                cur = trial
        return cur
    k_size = _popcount(keep)
    Z = F & ~keep

    def keep_dependent_over(z: int) -> bool:
        return r(keep | z) - r(z) < k_size

    if not keep_dependent_over(Z):
        raise ValueError("no circuit of F contains keep (keep independent over F - keep)")
    for k in oracle.rows(keep):
        if r((keep & ~(1 << k)) | Z) - r(Z) < k_size - 1:
            raise ValueError("keep is not a circuit of the contraction by F - keep")
    for k in oracle.rows(Z):
        trial = Z & ~(1 << k)
        if keep_dependent_over(trial):
            Z = trial
    return keep | Z


MAXWELL_MAX_N = 12


def maxwell_violations(g: Graph, d: int) -> list[frozenset]:
    """Vertex sets S, |S| >= d, spanning more than d|S| - C(d+1, 2) edges."""
    if g.n > MAXWELL_MAX_N:
        raise ValueError(f"exhaustive Maxwell count is limited to n <= {MAXWELL_MAX_N}")
    out = []
    bound = comb(d + 1, 2)
    for k in range(max(d, 1), g.n + 1):
        for S in combinations(range(g.n), k):
            if g.subgraph_edge_count(S) > d * k - bound:
                out.append(frozenset(S))
    return out
