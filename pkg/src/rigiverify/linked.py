"""Linked, stress-linked and globally linked vertex pairs.

Only one-directional implications are known for d >= 3, so verdicts are
three-valued.  Every rule works on an edge mask over one rank oracle per
dimension; deleting a vertex z is done by dropping the edges at z, which
leaves all ranks unchanged.

Exact d = 2 test.  {u, v} is 2-stress-linked iff uv is an edge or some
R_2-connected subgraph H contains u, v with kappa(u, v; H) >= 3.  The edge
set of an R_2-connected H lies inside a single component K of R_2(G), and K
is itself R_2-connected with kappa(u, v; K) >= kappa(u, v; H).  So it
suffices to scan the nontrivial components.  The exhaustive induced-subset
search is kept as :func:`is_2_stress_linked_exhaustive`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Any

from .graph import Graph, kappa, small_separators
from .matroid import components, is_Rd_connected
from .rigidity import GenericConfig, RankOracle, _popcount, is_d_linked, is_Rd_independent
from .stress import is_globally_d_rigid

RULES = {
    "adjacent": "adjacent pairs are always stress-linked",
    "exact-2d-characterization": "d=2: R_2-connected subgraph with kappa(u,v) >= 3",
    "thm-vertex-redundant-sufficient": "n >= d+2 and at most d-1 vertices z break d-linkedness in G-z",
    "thm-linked-dimension-drop": "(d+1)-linked implies d-stress-linked",
    "thm-gluing": "union over at most d+1 shared vertices, d-linked on both sides",
    "prop-globally-rigid": "every pair of a globally d-rigid graph is d-stress-linked",
    "not-d-linked": "stress-linked pairs are d-linked",
    "kappa-bound": "stress-linked (and globally linked) pairs have kappa >= d+1",
    "two-cocircuit": "uv lies in a size-two cocircuit of R_d(G+uv)",
    "stress-linked": "d-stress-linked pairs are globally d-linked",
    "edge-stress-linked": "some edge uv has {u,v} d-stress-linked in G-uv",
    "all-edges-not-stress-linked": "no edge uv has {u,v} d-stress-linked in G-uv",
}

MAX_EXHAUSTIVE_N = 16
MAX_SEPARATOR_N = 12


class Tri(str, enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, b: bool) -> "Tri":
        return cls.TRUE if b else cls.FALSE


@dataclass(frozen=True)
class Verdict:
    value: Tri
    rule: str | None = None
    witness: Any = None
    attempted: tuple[str, ...] = ()

    def __post_init__(self):
        if self.value is not Tri.UNKNOWN and self.rule is None:
            raise ValueError("decided verdicts must name a rule")
        if self.rule is not None and self.rule not in RULES:
            raise ValueError(f"unregistered rule id {self.rule!r}")

    def __bool__(self):
        raise TypeError("Verdict is three-valued; compare .value instead")

    @property
    def is_true(self) -> bool:
        return self.value is Tri.TRUE

    @property
    def is_false(self) -> bool:
        return self.value is Tri.FALSE

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"value": self.value.value}
        if self.rule is not None:
            out["rule"] = self.rule
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.value is Tri.UNKNOWN:
            out["attempted"] = list(self.attempted)
        return out


def _jsonable(x):
    if isinstance(x, Verdict):
        return x.to_dict()
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (frozenset, set)):
        return sorted(_jsonable(v) for v in x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _check_pair(n: int, u: int, v: int) -> None:
    if u == v:
        raise ValueError("need two distinct vertices")
    if not (0 <= u < n and 0 <= v < n):
        raise ValueError(f"vertex out of range 0..{n - 1}")


class LinkEngine:
    """Rank oracles for one vertex set at dimensions d and d+1."""

    def __init__(self, g: Graph, config: GenericConfig, oracle: RankOracle | None = None):
        self.g = g
        self.config = config
        self.d = config.d
        self.n = g.n
        self.o = oracle if oracle is not None else RankOracle(g, config)
        self._o_up: RankOracle | None = None
        self._star = [0] * g.n
        for k, (a, b) in enumerate(self.o.pairs):
            self._star[a] |= 1 << k
            self._star[b] |= 1 << k

    @property
    def o_up(self) -> RankOracle:
        if self._o_up is None:
            self._o_up = RankOracle(self.g, self.config.with_dim(self.d + 1))
        return self._o_up

    def _F(self, F: int | None) -> int:
        return self.g.mask if F is None else F

    def graph_of(self, F: int) -> Graph:
        return self.o.graph_of(F)

    def without_vertex(self, F: int, z: int) -> int:
        return F & ~self._star[z]

    def within(self, F: int, vs) -> int:
        keep = set(vs)
        out = 0
        for k in self.o.rows(F):
            a, b = self.o.pairs[k]
            if a in keep and b in keep:
                out |= 1 << k
        return out

    # -- basic predicates ---------------------------------------------------
    def d_linked(self, u: int, v: int, F: int | None = None) -> bool:
        return is_d_linked(self.o, u, v, self._F(F))

    def breaking_vertices(self, u: int, v: int, F: int | None = None) -> list[int]:
        """U = {z : {u,v} not d-linked in G - z}."""
        F = self._F(F)
        return [z for z in range(self.n) if z not in (u, v) and not is_d_linked(self.o, u, v, self.without_vertex(F, z))]

    def vertex_redundantly_linked(self, u: int, v: int, F: int | None = None) -> bool:
        return not self.breaking_vertices(u, v, F)

    # -- exact d = 2 --------------------------------------------------------
    def two_stress_witness(self, u: int, v: int, F: int | None = None) -> frozenset | None:
        if self.d != 2:
            raise ValueError("the exact characterization is for d = 2")
        F = self._F(F)
        if F & self.o.bit(u, v):
            return frozenset((u, v))
        for K in components(self.o, F).nontrivial:
            h = self.graph_of(K)
            verts = frozenset(x for e in h.edges for x in e)
            if u in verts and v in verts and kappa(h, u, v, cutoff=3) >= 3:
                return verts
        return None

    def two_stress_witness_exhaustive(self, u: int, v: int, F: int | None = None) -> frozenset | None:
        """Search vertex sets S containing u, v for an R_2-connected g[S], kappa >= 3."""
        if self.d != 2:
            raise ValueError("the exact characterization is for d = 2")
        if self.n > MAX_EXHAUSTIVE_N:
            raise ValueError(f"exhaustive search limited to n <= {MAX_EXHAUSTIVE_N}")
        F = self._F(F)
        if F & self.o.bit(u, v):
            return frozenset((u, v))
        rest = [x for x in range(self.n) if x not in (u, v)]
        for k in range(2, len(rest) + 1):
            for extra in combinations(rest, k):
                S = frozenset((u, v, *extra))
                sub = self.within(F, S)
                h = self.graph_of(sub)
                if {x for e in h.edges for x in e} != S:
                    continue
                if is_Rd_connected(self.o, sub) and kappa(h, u, v, cutoff=3) >= 3:
                    return S
        return None

    # -- individual rules (None when the rule does not fire) -----------------
    def rule_adjacent(self, u, v, F=None):
        if self._F(F) & self.o.bit(u, v):
            return Verdict(Tri.TRUE, "adjacent", frozenset((u, v)))
        return None

    def rule_exact_2d(self, u, v, F=None):
        if self.d != 2:
            return None
        w = self.two_stress_witness(u, v, F)
        if w is None:
            return Verdict(Tri.FALSE, "exact-2d-characterization")
        return Verdict(Tri.TRUE, "exact-2d-characterization", w)

    def rule_vertex_redundant(self, u, v, F=None):
        if self.n < self.d + 2:
            return None
        U = self.breaking_vertices(u, v, F)
        if len(U) <= self.d - 1:
            return Verdict(Tri.TRUE, "thm-vertex-redundant-sufficient", {"U": U})
        return None

    def rule_dimension_drop(self, u, v, F=None):
        if is_d_linked(self.o_up, u, v, self._F(F)):
            return Verdict(Tri.TRUE, "thm-linked-dimension-drop")
        return None

    def rule_gluing(self, u, v, F=None):
        # already implied by the vertex-redundant rule once n >= d+2
        if self.n > MAX_SEPARATOR_N:
            return None
        F = self._F(F)
        g = self.graph_of(F)
        allv = frozenset(range(self.n))
        for S, comps in small_separators(g, self.d + 1, containing=(u, v)):
            for C in comps:
                V1 = S | frozenset(C)
                V2 = allv - frozenset(C)
                if is_d_linked(self.o, u, v, self.within(F, V1)) and is_d_linked(self.o, u, v, self.within(F, V2)):
                    return Verdict(Tri.TRUE, "thm-gluing", {"separator": S, "side": sorted(C)})
        return None

    def rule_globally_rigid(self, u, v, F=None):
        if is_globally_d_rigid(self.o, self._F(F)):
            return Verdict(Tri.TRUE, "prop-globally-rigid")
        return None

    def rule_not_linked(self, u, v, F=None):
        if not self.d_linked(u, v, F):
            return Verdict(Tri.FALSE, "not-d-linked")
        return None

    def rule_kappa(self, u, v, F=None):
        F = self._F(F)
        k = kappa(self.graph_of(F), u, v, cutoff=self.d + 1)
        if k <= self.d:
            return Verdict(Tri.FALSE, "kappa-bound", {"kappa": k})
        return None

    def rule_two_cocircuit(self, u, v, F=None):
        F = self._F(F)
        e = self.o.bit(u, v)
        if F & e:
            return None
        top = self.o.rank(F | e)
        if self.o.rank(F) != top:
            return None
        for k in self.o.rows(F):
            f = 1 << k
            if self.o.rank((F | e) & ~f) == top and self.o.rank(F & ~f) == top - 1:
                return Verdict(Tri.FALSE, "two-cocircuit", {"edge": list(self.o.pairs[k])})
        return None

    TRUE_RULES = ("rule_vertex_redundant", "rule_dimension_drop", "rule_gluing", "rule_globally_rigid")
    FALSE_RULES = ("rule_not_linked", "rule_kappa", "rule_two_cocircuit")

    # -- cascades -----------------------------------------------------------
    def stress_linked(self, u: int, v: int, F: int | None = None) -> Verdict:
        _check_pair(self.n, u, v)
        hit = self.rule_adjacent(u, v, F)
        if hit is not None:
            return hit
        if self.d == 2:
            return self.rule_exact_2d(u, v, F)
        attempted = []
        for name in self.FALSE_RULES + self.TRUE_RULES:
            hit = getattr(self, name)(u, v, F)
            attempted.append(name)
            if hit is not None:
                return hit
        return Verdict(Tri.UNKNOWN, attempted=tuple(_RULE_IDS[a] for a in attempted))

    def globally_linked(self, u: int, v: int, F: int | None = None) -> Verdict:
        _check_pair(self.n, u, v)
        s = self.stress_linked(u, v, F)
        if s.is_true:
            return Verdict(Tri.TRUE, "stress-linked", s)
        for name in ("rule_not_linked", "rule_kappa"):
            hit = getattr(self, name)(u, v, F)
            if hit is not None:
                return hit
        return Verdict(Tri.UNKNOWN, attempted=("stress-linked", "not-d-linked", "kappa-bound"))

    def stress_independent(self, F: int | None = None) -> Verdict:
        F = self._F(F)
        unknown = []
        for k in self.o.rows(F):
            u, v = self.o.pairs[k]
            s = self.stress_linked(u, v, F & ~(1 << k))
            if s.is_true:
                return Verdict(Tri.FALSE, "edge-stress-linked", {"edge": [u, v], "by": s})
            if s.value is Tri.UNKNOWN:
                unknown.append([u, v])
        if unknown:
            return Verdict(Tri.UNKNOWN, witness={"undecided_edges": unknown}, attempted=("edge-stress-linked",))
        return Verdict(Tri.TRUE, "all-edges-not-stress-linked")


_RULE_IDS = {
    "rule_vertex_redundant": "thm-vertex-redundant-sufficient",
    "rule_dimension_drop": "thm-linked-dimension-drop",
    "rule_gluing": "thm-gluing",
    "rule_globally_rigid": "prop-globally-rigid",
    "rule_not_linked": "not-d-linked",
    "rule_kappa": "kappa-bound",
    "rule_two_cocircuit": "two-cocircuit",
}


# --- functional API ------------------------------------------------------------


def is_vertex_redundantly_d_linked(g: Graph, u: int, v: int, config: GenericConfig) -> bool:
    if g.n < 3:
        raise ValueError("vertex redundancy needs at least 3 vertices")
    _check_pair(g.n, u, v)
    return LinkEngine(g, config).vertex_redundantly_linked(u, v)


def is_2_stress_linked(g: Graph, u: int, v: int, config: GenericConfig | None = None) -> bool:
    return two_stress_linked_witness(g, u, v, config) is not None


def two_stress_linked_witness(g: Graph, u: int, v: int, config: GenericConfig | None = None) -> frozenset | None:
    _check_pair(g.n, u, v)
    cfg = (config or GenericConfig()).with_dim(2)
    return LinkEngine(g, cfg).two_stress_witness(u, v)


def is_2_stress_linked_exhaustive(g: Graph, u: int, v: int, config: GenericConfig | None = None) -> frozenset | None:
    """Witness vertex set from the induced-subset search, or None."""
    _check_pair(g.n, u, v)
    if g.n > MAX_EXHAUSTIVE_N:
        raise ValueError(f"exhaustive search limited to n <= {MAX_EXHAUSTIVE_N}")
    cfg = (config or GenericConfig()).with_dim(2)
    return LinkEngine(g, cfg).two_stress_witness_exhaustive(u, v)


def d_stress_linked_verdict(g: Graph, u: int, v: int, config: GenericConfig) -> Verdict:
    return LinkEngine(g, config).stress_linked(u, v)


def globally_d_linked_verdict(g: Graph, u: int, v: int, config: GenericConfig) -> Verdict:
    return LinkEngine(g, config).globally_linked(u, v)


def d_stress_independent_verdict(g: Graph, config: GenericConfig) -> Verdict:
    return LinkEngine(g, config).stress_independent()


@dataclass
class WitnessBounds:
    d: int
    rd1_independent: bool
    violations: list[dict] = field(default_factory=list)
    equality_cases: list[list[int]] = field(default_factory=list)
    equality_not_complete: list[list[int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.rd1_independent and not self.violations and not self.equality_not_complete

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "ok": self.ok,
            "rd1_independent": self.rd1_independent,
            "violations": self.violations,
            "equality_cases": self.equality_cases,
            "equality_not_complete": self.equality_not_complete,
        }


BOUNDS_MAX_N = 12


def stress_independence_witness_bounds(
    g: Graph, d: int, config: GenericConfig, engine: LinkEngine | None = None, require_verdict: bool = True
) -> WitnessBounds:
    """R_{d+1}-independence and the per-subgraph edge bound for a d-stress-independent graph.

    The bound is checked on induced subgraphs only: for a fixed vertex set,
    |E'| - r_d(G') can only grow when edges are added.
    """
    if g.n > BOUNDS_MAX_N:
        raise ValueError(f"exhaustive subgraph bounds limited to n <= {BOUNDS_MAX_N}")
    eng = engine or LinkEngine(g, config.with_dim(d))
    if require_verdict:
        verdict = eng.stress_independent()
        if not verdict.is_true:
            raise ValueError(f"graph is not known to be {d}-stress-independent ({verdict.value.value})")
    out = WitnessBounds(d, is_Rd_independent(eng.o_up, g.mask))
    big = comb(d + 2, 2)
    for k in range(d + 2, g.n + 1):
        for S in combinations(range(g.n), k):
            sub = eng.within(g.mask, S)
            m = _popcount(sub)
            r = eng.o.rank(sub)
            mid = r + k - d - 1
            if m > mid or mid > (d + 1) * k - big:
                out.violations.append({"vertices": list(S), "edges": m, "bound": mid})
            elif m == mid:
                out.equality_cases.append(list(S))
                if not (k == d + 2 and m == comb(k, 2)):
                    out.equality_not_complete.append(list(S))
    return out
