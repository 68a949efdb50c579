"""Connectivity structure of R_d(G): components, cocircuits, ear decompositions.

Everything is computed through a :class:`~rigiverify.rigidity.RankOracle`;
contraction ranks are ``r(X | D) - r(D)``.  All greedy scans run in
canonical pair order, so results are deterministic for a fixed seed.

Ear decompositions.  With ``D`` the union of the ears so far, the next lobe
is taken to be a circuit ``Y`` of the contraction ``M/D`` that is
independent in ``M``; the ear is then the unique-up-to-choice circuit
``C`` of ``M`` with ``C - D = Y``, found by :func:`shrink_to_circuit`.
A circuit of ``M/D`` that is dependent in ``M`` is itself a circuit of
``M`` disjoint from ``D`` and cannot be a lobe, while every lobe is
dependent in ``M/D``; so these ``Y`` are exactly the inclusion-minimal
lobes and (E3) holds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .rigidity import RankOracle, _covers_all_vertices, _popcount, shrink_to_circuit


class UnionFind:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb

    def groups(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x in sorted(self.parent):
            out.setdefault(self.find(x), []).append(x)
        return sorted(out.values())


@dataclass
class ComponentDecomposition:
    components: list[int]
    trivial: list[bool]

    @property
    def nontrivial(self) -> list[int]:
        return [c for c, t in zip(self.components, self.trivial) if not t]

    @property
    def bridges(self) -> list[int]:
        return [c for c, t in zip(self.components, self.trivial) if t]

    def validate(self, oracle: RankOracle, F: int) -> None:
        union = 0
        for c in self.components:
            if union & c:
                raise AssertionError("components overlap")
            union |= c
        if union != F:
            raise AssertionError("components do not cover the edge set")
        if sum(oracle.rank(c) for c in self.components) != oracle.rank(F):
            raise AssertionError("component ranks do not add up to the total rank")


def _components_from_groups(groups: list[list[int]]) -> ComponentDecomposition:
    masks = []
    for grp in groups:
        m = 0
        for k in grp:
            m |= 1 << k
        masks.append(m)
    masks.sort(key=lambda m: (m & -m))
    return ComponentDecomposition(masks, [_popcount(m) == 1 for m in masks])


def components(oracle: RankOracle, F: int | None = None) -> ComponentDecomposition:
    """Connected components of R_d restricted to F (default: the graph)."""
    F = oracle.full if F is None else F
    uf = UnionFind()
    for k in oracle.rows(F):
        uf.find(k)
    _, circuits = oracle.fundamental_supports(F)
    for e, sup in circuits:
        for k in sup:
            uf.union(e, k)
    dec = _components_from_groups(uf.groups())
    if oracle.debug:
        dec.validate(oracle, F)
    return dec


def is_Rd_connected(oracle: RankOracle, F: int | None = None) -> bool:
    """One nontrivial component covering F; with F omitted, no isolated vertices."""
    whole = F is None
    F = oracle.full if F is None else F
    if _popcount(F) < 2 or oracle.rank(F) == _popcount(F):
        return False
    if whole and not _covers_all_vertices(oracle, F):
        return False
    dec = components(oracle, F)
    return len(dec.components) == 1 and not dec.trivial[0]


def is_minimally_Rd_connected(oracle: RankOracle, F: int | None = None) -> bool:
    F_ = oracle.full if F is None else F
    if _popcount(F_) < 2 or not is_Rd_connected(oracle, F):
        return False
    return all(not is_Rd_connected(oracle, F_ & ~(1 << k)) for k in oracle.rows(F_))


def is_two_cocircuit(oracle: RankOracle, e: int, f: int, F: int | None = None) -> bool:
    """{e, f} (single-bit masks) is a cocircuit of R_d restricted to F."""
    F = oracle.full if F is None else F
    if e == f or _popcount(e) != 1 or _popcount(f) != 1:
        raise ValueError("need two distinct single elements")
    if not (F & e and F & f):
        raise KeyError("both elements must belong to the edge set")
    r = oracle.rank
    top = r(F)
    return r(F & ~e) == top and r(F & ~f) == top and r(F & ~(e | f)) == top - 1


# --- exhaustive circuit enumeration (cross-check oracle) -----------------------

EXHAUSTIVE_MAX = 16


def subset_ranks(oracle: RankOracle, F: int | None = None) -> tuple[list[int], np.ndarray]:
    """Ranks of all 2^|F| subsets, indexed by local bitmask over ``rows(F)``."""
    F = oracle.full if F is None else F
    rows = oracle.rows(F)
    k = len(rows)
    if k > EXHAUSTIVE_MAX:
        raise ValueError(f"exhaustive subset ranks limited to {EXHAUSTIVE_MAX} elements")
    idx = np.arange(1 << k, dtype=np.int64)
    sel = ((idx[:, None] >> np.arange(k)) & 1).astype(np.bool_)
    best = np.zeros(1 << k, dtype=np.int64)
    for t in range(oracle.config.trials):
        mat = oracle._enc[t][rows] if rows else oracle._enc[t][:0]
        if k:
            best = np.maximum(best, oracle.field.ranks_of_rowsets(mat, sel))
    return rows, best


def enumerate_circuits(oracle: RankOracle, F: int | None = None) -> list[int]:
    """All circuits inside F as pair-index masks (exhaustive)."""
    rows, rk = subset_ranks(oracle, F)
    k = len(rows)
    idx = np.arange(1 << k, dtype=np.int64)
    pc = np.zeros(1 << k, dtype=np.int64)
    for j in range(k):
        pc += (idx >> j) & 1
    dep = rk < pc
    # circuit: dependent, and every single-element deletion is independent
    minimal = dep.copy()
    for j in range(k):
        has = ((idx >> j) & 1).astype(np.bool_)
        minimal &= ~(has & dep[idx & ~(1 << j)])
    out = []
    for s in np.flatnonzero(minimal):
        s = int(s)
        out.append(sum(1 << rows[j] for j in range(k) if s >> j & 1))
    return sorted(out)


def components_exhaustive(oracle: RankOracle, F: int | None = None) -> ComponentDecomposition:
    F = oracle.full if F is None else F
    uf = UnionFind()
    for k in oracle.rows(F):
        uf.find(k)
    for c in enumerate_circuits(oracle, F):
        ks = oracle.rows(c)
        for k in ks[1:]:
            uf.union(ks[0], k)
    return _components_from_groups(uf.groups())


# --- ear decompositions --------------------------------------------------------


@dataclass
class EarDecomposition:
    circuits: list[int]
    lobes: list[int] = field(default_factory=list)
    prefixes: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.lobes:
            D = 0
            for c in self.circuits:
                self.lobes.append(c & ~D)
                D |= c
                self.prefixes.append(D)

    @property
    def t(self) -> int:
        return len(self.circuits)

    def lobe_sizes(self) -> list[int]:
        return [_popcount(x) for x in self.lobes]

    def check(self, oracle: RankOracle, F: int) -> list[str]:
        """Violated conditions among E1, E2, cover, circuits, rank telescoping."""
        bad = []
        D = 0
        for i, c in enumerate(self.circuits):
            if oracle.rank(c) != _popcount(c) - 1 or any(
                oracle.rank(c & ~(1 << k)) != _popcount(c) - 1 for k in oracle.rows(c)
            ):
                bad.append(f"ear {i} is not a circuit")
            if i and not c & D:
                bad.append(f"E1 fails at ear {i}")
            if not c & ~D:
                bad.append(f"E2 fails at ear {i}")
            lobe = c & ~D
            if oracle.rank(D | c) - oracle.rank(D) != _popcount(lobe) - 1:
                bad.append(f"rank telescoping fails at ear {i}")
            D |= c
        if D != F:
            bad.append("ears do not cover the edge set")
        return bad


def _next_lobe(oracle: RankOracle, F: int, D: int) -> int:
    r = oracle.rank
    rD = r(D)
    rest = F & ~D

    def rc(X: int) -> int:
        return r(X | D) - rD

    basis, size, nonbasis = 0, 0, []
    for k in oracle.rows(rest):
        b = 1 << k
        if rc(basis | b) > size:
            basis |= b
            size += 1
        else:
            nonbasis.append(b)
    for b in nonbasis:
        Y = b
        for k in oracle.rows(basis):
            if rc((basis | b) & ~(1 << k)) == size:
                Y |= 1 << k
        if r(Y) == _popcount(Y):
            return Y
    # every fundamental circuit of M/D was an M-circuit; search all subsets
    ks = oracle.rows(rest)
    if len(ks) > 20:
        raise RuntimeError("no usable lobe among fundamental circuits and rest too large to search")
    for s in range(2, len(ks) + 1):
        for combo in combinations(ks, s):
            Y = 0
            for k in combo:
                Y |= 1 << k
            if r(Y) != s or rc(Y) >= s:
                continue
            if all(rc(Y & ~(1 << k)) == s - 1 for k in combo):
                return Y
    raise RuntimeError("no lobe found; the matroid is not connected")


def ear_decomposition(oracle: RankOracle, F: int | None = None) -> EarDecomposition:
    if not is_Rd_connected(oracle, F):
        raise ValueError("R_d restricted to this edge set is not connected")
    F = oracle.full if F is None else F
    first = shrink_to_circuit(oracle, F)
    ears = [first]
    D = first
    while D != F:
        Y = _next_lobe(oracle, F, D)
        C = shrink_to_circuit(oracle, Y | D, keep=Y)
        ears.append(C)
        D |= C
    return EarDecomposition(ears)


def violates_e3(oracle: RankOracle, ears: EarDecomposition, F: int | None = None) -> list[int]:
    """Indices i >= 1 where some circuit meeting D_{i-1} has a smaller lobe (exhaustive)."""
    circuits = enumerate_circuits(oracle, F)
    bad = []
    for i in range(1, ears.t):
        D = ears.prefixes[i - 1]
        lobe = ears.lobes[i]
        for c in circuits:
            other = c & ~D
            if c & D and other and other != lobe and other & ~lobe == 0:
                bad.append(i)
                break
    return bad
