"""Registry of theorem and conjecture checks over graph streams.

Each check has its own applicability filter and an assertion.  Evaluating a
check on one graph yields NA (filtered out), PASS, FAIL or UNKNOWN (a
three-valued verdict blocked the decision).  Checks of proved statements
report FAILs as violations; search-mode checks (conjectures) report them as
findings for review and never fail a run.

Every graph gets its own seed, hashed from the master seed and the graph's
canonical graph6, so results do not depend on stream order or on how the
stream is split between workers.
"""

from __future__ import annotations

import enum
import hashlib
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Sequence

from .enumeration import canonical_form, is_isomorphic
from .graph import (
    Graph,
    complete,
    complete_bipartite,
    k4_2sum_k4,
    k4_plus,
    is_minimally_k_connected,
    two_separations,
    wheel,
)
from .graph6 import graph6_decode, graph6_encode
from .linked import LinkEngine, Tri, stress_independence_witness_bounds
from .matroid import components, is_minimally_Rd_connected, is_Rd_connected
from .rigidity import GenericConfig, RankOracle, is_d_linked, is_d_rigid, rank_complete, is_Rd_circuit, is_Rd_independent, maxwell_violations
from .stress import (
    is_globally_d_rigid,
    is_minimally_globally_d_rigid,
    is_redundantly_d_rigid,
    shared_stress_profile,
)

EXHAUSTIVE_N = 12
CANONICAL_SEED_MAX_N = 10


class Status(str, enum.Enum):
    NA = "na"
    PASS = "pass"
    FAIL = "fail"
    UNKNOWN = "unknown"


def graph_seed(master: int, g: Graph) -> int:
    """Per-graph seed from the master seed and the canonical graph6 (n <= 10)."""
    h = canonical_form(g) if g.n <= CANONICAL_SEED_MAX_N else g
    digest = hashlib.sha256(f"{master}:{graph6_encode(h)}".encode()).digest()
    return int.from_bytes(digest[:8], "big") >> 1


class GraphContext:
    """Lazily computed, cached facts about one graph at one dimension."""

    def __init__(self, g: Graph, config: GenericConfig, derive_seed: bool = True):
        self.g = g
        self.config = config.with_seed(graph_seed(config.seed, g)) if derive_seed else config
        self.d = config.d

    @cached_property
    def engine(self) -> LinkEngine:
        return LinkEngine(self.g, self.config)

    @property
    def o(self) -> RankOracle:
        return self.engine.o

    @property
    def o_up(self) -> RankOracle:
        return self.engine.o_up

    @cached_property
    def rigid(self) -> bool:
        return is_d_rigid(self.o)

    @cached_property
    def rigid_up(self) -> bool:
        return is_d_rigid(self.o_up)

    @cached_property
    def independent(self) -> bool:
        return is_Rd_independent(self.o)

    @cached_property
    def independent_up(self) -> bool:
        return is_Rd_independent(self.o_up)

    @cached_property
    def globally_rigid(self) -> bool:
        return is_globally_d_rigid(self.o)

    @cached_property
    def min_globally_rigid(self) -> bool:
        return self.globally_rigid and is_minimally_globally_d_rigid(self.o)

    @cached_property
    def rd_connected(self) -> bool:
        return is_Rd_connected(self.o)

    @cached_property
    def min_rd_connected(self) -> bool:
        return self.rd_connected and is_minimally_Rd_connected(self.o)

    @cached_property
    def components(self):
        return components(self.o)

    @cached_property
    def circuit(self) -> bool:
        return is_Rd_circuit(self.o)

    @cached_property
    def stress_independent(self):
        return self.engine.stress_independent()

    @cached_property
    def s(self) -> int:
        return shared_stress_profile(self.o).s

    def nonadjacent_pairs(self):
        return [(u, v) for u, v in combinations(range(self.g.n), 2) if not self.g.has_edge(u, v)]


@dataclass(frozen=True)
class Outcome:
    status: Status
    diag: dict | None = None


NA = Outcome(Status.NA)
PASS = Outcome(Status.PASS)


def _fail(**diag) -> Outcome:
    return Outcome(Status.FAIL, diag)


def _unknown(**diag) -> Outcome:
    return Outcome(Status.UNKNOWN, diag)


@dataclass(frozen=True)
class CheckSpec:
    id: str
    statement: str
    dims: tuple[int, ...]
    evaluate: Callable[[GraphContext], Outcome]
    search: bool = False
    search_from_d: int = 1

    def is_search(self, d: int) -> bool:
        return self.search and d >= self.search_from_d


REGISTRY: dict[str, CheckSpec] = {}

ALL_DIMS = (1, 2, 3, 4, 5)


def register(id: str, statement: str, dims=ALL_DIMS, search=False, search_from_d=1):
    def deco(fn):
        REGISTRY[id] = CheckSpec(id, statement, tuple(dims), fn, search, search_from_d)
        return fn

    return deco


def _has_clique(g: Graph, k: int) -> list[int] | None:
    for S in combinations(range(g.n), k):
        if all(g.has_edge(a, b) for a, b in combinations(S, 2)):
            return list(S)
    return None


def _subgraph_bounds(ctx: GraphContext) -> Outcome:
    """R_{d+1}-independence and the per-subgraph bound (exhaustive, induced)."""
    if ctx.g.n > EXHAUSTIVE_N:
        raise ValueError(f"exhaustive subgraph bound limited to n <= {EXHAUSTIVE_N}")
    wb = stress_independence_witness_bounds(ctx.g, ctx.d, ctx.config, engine=ctx.engine, require_verdict=False)
    return PASS if wb.ok else _fail(**wb.to_dict())


# --- registry ----------------------------------------------------------------------


@register("t13-min-glob-bound", "minimally globally d-rigid, n >= d+2: |E| <= (d+1)n - C(d+2,2), equality iff K_{d+2}")
def _t13(ctx):
    g, d = ctx.g, ctx.d
    if g.n < d + 2 or not ctx.min_globally_rigid:
        return NA
    bound = (d + 1) * g.n - comb(d + 2, 2)
    if g.m > bound:
        return _fail(edges=g.m, bound=bound)
    if (g.m == bound) != (g.n == d + 2 and g.is_complete()):
        return _fail(edges=g.m, bound=bound, equality_case="mismatch")
    return PASS


@register("t14-glob-rd1-indep", "minimally globally d-rigid graphs are R_{d+1}-independent")
def _t14(ctx):
    if not ctx.min_globally_rigid:
        return NA
    return PASS if ctx.independent_up else _fail(rank_up=ctx.o_up.rank(), edges=ctx.g.m)


@register("t12-dim-drop", "(d+1)-rigid graphs are globally d-rigid")
def _t12(ctx):
    if not ctx.rigid_up:
        return NA
    return PASS if ctx.globally_rigid else _fail(s=ctx.s)


def _pair_check(ctx: GraphContext, pairs) -> Outcome:
    """Pairs must not get a False stress-linked verdict (d=2: must be True)."""
    if not pairs:
        return NA
    unknown = []
    for u, v in pairs:
        verdict = ctx.engine.stress_linked(u, v)
        if verdict.is_false or (ctx.d == 2 and not verdict.is_true):
            return _fail(pair=[u, v], verdict=verdict.to_dict())
        if verdict.value is Tri.UNKNOWN:
            unknown.append([u, v])
    return _unknown(pairs=unknown) if unknown else PASS


@register("t16-linked-drop", "(d+1)-linked pairs are d-stress-linked")
def _t16(ctx):
    pairs = [(u, v) for u, v in ctx.nonadjacent_pairs() if is_d_linked(ctx.o_up, u, v)]
    return _pair_check(ctx, pairs)


@register("t15-vertex-redundant", "n >= d+2: vertex-redundantly d-linked pairs are d-stress-linked")
def _t15(ctx):
    if ctx.g.n < ctx.d + 2:
        return NA
    pairs = [(u, v) for u, v in ctx.nonadjacent_pairs() if ctx.engine.vertex_redundantly_linked(u, v)]
    return _pair_check(ctx, pairs)


def _stress_independent_filter(ctx) -> Outcome | None:
    """None when d-stress-independent; NA when not; UNKNOWN when undecided."""
    v = ctx.stress_independent
    if v.is_true:
        return None
    if v.is_false:
        return NA
    return _unknown(filter="stress-independent", verdict=v.to_dict())


@register("t-mainstress", "d-stress-independent graphs are R_{d+1}-independent and satisfy the subgraph bound")
def _tmain(ctx):
    blocked = _stress_independent_filter(ctx)
    if blocked is not None:
        return blocked
    if not ctx.independent_up:
        return _fail(rank_up=ctx.o_up.rank(), edges=ctx.g.m)
    return _subgraph_bounds(ctx) if ctx.g.n <= EXHAUSTIVE_N else PASS


@register("t46-3n9", "2-stress-independent, n >= 8: |E| <= 3n - 9", dims=(2,))
def _t46(ctx):
    g = ctx.g
    if g.n < 8:
        return NA
    if g.m <= 3 * g.n - 9:
        return PASS  # holds whatever the verdict
    blocked = _stress_independent_filter(ctx)
    if blocked is not None:
        return blocked
    return _fail(edges=g.m, bound=3 * g.n - 9)


@register("t47-strong", "2-stress-independent: subgraphs with n' >= 8 have |E'| <= r_2(G') + n' - 6", dims=(2,))
def _t47(ctx):
    g = ctx.g
    if g.n < 8:
        return NA
    if g.n > EXHAUSTIVE_N:
        raise ValueError(f"exhaustive subgraph bound limited to n <= {EXHAUSTIVE_N}")
    blocked = _stress_independent_filter(ctx)
    if blocked is not None:
        return blocked
    eng = ctx.engine
    for k in range(8, g.n + 1):
        for S in combinations(range(g.n), k):
            sub = eng.within(g.mask, S)
            m = bin(sub).count("1")
            r = eng.o.rank(sub)
            if m > r + k - 6:
                return _fail(vertices=list(S), edges=m, bound=r + k - 6)
    return PASS


def _circuit_s(g: Graph, config: GenericConfig) -> int:
    return shared_stress_profile(RankOracle(g, config)).s


@register("l49-2sum", "an R_d-circuit that is a 2-sum of circuits C1, C2 has s_d(C) = s_d(C1) + s_d(C2)")
def _l49(ctx):
    g = ctx.g
    if g.n < 4 or not ctx.circuit:
        return NA
    seps = [(e, sides) for e, sides in two_separations(g) if not g.has_edge(*e)]
    if not seps:
        return NA
    for (u, v), sides in seps:
        parts = []
        for side in sides:
            verts = sorted(side)
            h = g.induced(verts).add_edge(verts.index(u), verts.index(v))
            parts.append(h)
        oracles = [RankOracle(h, ctx.config) for h in parts]
        if not all(is_Rd_circuit(o) for o in oracles):
            continue
        s1, s2 = (shared_stress_profile(o).s for o in oracles)
        if ctx.s != s1 + s2:
            return _fail(separator=[u, v], s=ctx.s, s_parts=[s1, s2])
    return PASS


_W5 = wheel(5)
_K4 = complete(4)
_K4K4 = k4_2sum_k4()


@register("l411-class", "R_2-circuits: s_2 = 1 iff K_4; s_2 = 2 iff W_5 or K_4 (+)_2 K_4; n >= 7 gives s_2 >= 3", dims=(2,))
def _l411(ctx):
    g = ctx.g
    if not ctx.circuit:
        return NA
    s = ctx.s
    is_k4 = is_isomorphic(g, _K4)
    is_small = is_isomorphic(g, _W5) or is_isomorphic(g, _K4K4)
    if (s == 1) != is_k4 or (s == 2) != is_small or (g.n >= 7 and s < 3):
        return _fail(s=s, n=g.n, edges=g.m)
    return PASS


_P412 = (complete(4).remove_edge(0, 1), k4_plus(), _W5)


@register("p412-3n7", "2-stress-independent, n >= 4, |E| = 3n - 7: G is K_4 - e, K_4^+ or W_5", dims=(2,))
def _p412(ctx):
    g = ctx.g
    if g.n < 4 or g.m != 3 * g.n - 7:
        return NA
    blocked = _stress_independent_filter(ctx)
    if blocked is not None:
        return blocked
    return PASS if any(is_isomorphic(g, h) for h in _P412) else _fail(edges=g.m)


@register("t52-min-mconn", "nontrivial R_d-components all minimally R_d-connected: R_{d+1}-independent and subgraph bound")
def _t52(ctx):
    if ctx.g.m == 0:
        return NA
    for K in ctx.components.nontrivial:
        if not is_minimally_Rd_connected(ctx.o, K):
            return NA
    if not ctx.independent_up:
        return _fail(rank_up=ctx.o_up.rank(), edges=ctx.g.m)
    return _subgraph_bounds(ctx) if ctx.g.n <= EXHAUSTIVE_N else PASS


@register(
    "c51-via-2d",
    "minimally R_d-connected graphs are d-stress-independent (proved for d = 2)",
    search=True,
    search_from_d=3,
)
def _c51(ctx):
    if not ctx.min_rd_connected:
        return NA
    v = ctx.stress_independent
    if v.is_true:
        return PASS
    if v.is_false:
        return _fail(verdict=v.to_dict())
    return _unknown(verdict=v.to_dict())


@register("t62-nok4", "R_2-connected 2-stress-independent graphs on n >= 5 vertices contain no K_4", dims=(2,))
def _t62(ctx):
    if ctx.g.n < 5 or not ctx.rd_connected:
        return NA
    blocked = _stress_independent_filter(ctx)
    if blocked is not None:
        return blocked
    k4 = _has_clique(ctx.g, 4)
    return PASS if k4 is None else _fail(clique=k4)


@register("t66-mader", "minimally k-connected (k = d+1): R_k-independent and subgraph bound with r_{k-1}")
def _t66(ctx):
    k = ctx.d + 1
    if not is_minimally_k_connected(ctx.g, k):
        return NA
    if not ctx.independent_up:
        return _fail(rank_up=ctx.o_up.rank(), edges=ctx.g.m)
    return _subgraph_bounds(ctx) if ctx.g.n <= EXHAUSTIVE_N else PASS


@register("c44-sigma-sharp", "d-stress-independent graphs with enough vertices have |E| <= (d+1)n - (d+1)^2", search=True)
def _c44(ctx):
    g, d = ctx.g, ctx.d
    if g.n < d + 2:
        return NA
    bound = (d + 1) * g.n - (d + 1) ** 2
    if g.m <= bound:
        return PASS
    blocked = _stress_independent_filter(ctx)
    if blocked is not None:
        return blocked
    threshold = comb(d + 2, 2) + 1
    return _fail(edges=g.m, bound=bound, below_threshold=g.n < threshold, threshold=threshold)


@register("maxwell", "R_d-independent graphs: every S with |S| >= d spans at most d|S| - C(d+1,2) edges")
def _maxwell(ctx):
    if not ctx.independent:
        return NA
    bad = maxwell_violations(ctx.g, ctx.d)
    return PASS if not bad else _fail(sets=[sorted(S) for S in bad[:5]])


@register("hendrickson+mconn", "globally d-rigid, n >= d+2: redundantly d-rigid and R_d-connected")
def _hend(ctx):
    if ctx.g.n < ctx.d + 2 or not ctx.globally_rigid:
        return NA
    red = is_redundantly_d_rigid(ctx.o)
    if red and ctx.rd_connected:
        return PASS
    return _fail(redundantly_rigid=red, rd_connected=ctx.rd_connected)


@register("c63-kd2-free", "minimally globally d-rigid, n >= d+3: no K_{d+2} subgraph", search=True)
def _c63(ctx):
    if ctx.g.n < ctx.d + 3 or not ctx.min_globally_rigid:
        return NA
    k = _has_clique(ctx.g, ctx.d + 2)
    return PASS if k is None else _fail(clique=k)


# --- running -----------------------------------------------------------------------


@dataclass
class CheckReport:
    check: str
    config: dict
    scanned: int = 0
    applicable: int = 0
    passed: int = 0
    violations: list[dict] = field(default_factory=list)
    findings: list[dict] = field(default_factory=list)
    unknown: list[dict] = field(default_factory=list)
    notes: list[dict] = field(default_factory=list)
    runtime: float = 0.0

    @property
    def unknown_count(self) -> int:
        return len(self.unknown)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        """JSON form; runtime is left out so reports are byte-reproducible."""
        return {
            "check": self.check,
            "config": self.config,
            "scanned": self.scanned,
            "applicable": self.applicable,
            "passed": self.passed,
            "violation_count": len(self.violations),
            "unknown_count": self.unknown_count,
            "finding_count": len(self.findings),
            "violations": self.violations,
            "findings": self.findings,
            "unknown": self.unknown,
            "notes": self.notes,
        }


def config_dict(config: GenericConfig) -> dict:
    return {"d": config.d, "prime": config.prime, "seed": config.seed, "trials": config.trials}


def _spec(check_id: str) -> CheckSpec:
    try:
        return REGISTRY[check_id]
    except KeyError:
        raise KeyError(f"unknown check id {check_id!r}; known: {', '.join(sorted(REGISTRY))}") from None


def evaluate_graph(g: Graph, ids: Sequence[str], config: GenericConfig) -> list[Outcome]:
    ctx = GraphContext(g, config)
    return [_spec(i).evaluate(ctx) for i in ids]


def _note_t46(g: Graph, config: GenericConfig) -> dict | None:
    """Below 8 vertices: record 2-stress-independent graphs above 3n - 9."""
    if g.n >= 8 or g.m <= 3 * g.n - 9 or g.n < 4:
        return None
    ctx = GraphContext(g, config)
    if not ctx.stress_independent.is_true:
        return None
    return {"edges": g.m, "n": g.n, "bound_3n_minus_9": 3 * g.n - 9, "excess": g.m - (3 * g.n - 9)}


def _worker(args) -> tuple[list[Outcome], dict | None]:
    g6, ids, config = args
    g = graph6_decode(g6)
    outs = evaluate_graph(g, ids, config)
    note = _note_t46(g, config) if "t46-3n9" in ids else None
    return outs, note


def run_checks(
    ids: Sequence[str],
    stream: Iterable[Graph],
    config: GenericConfig,
    jobs: int = 1,
    allow_empty: bool = False,
) -> list[CheckReport]:
    """Run several checks over one stream, sharing per-graph contexts."""
    specs = [_spec(i) for i in ids]
    for s in specs:
        if config.d not in s.dims:
            raise ValueError(f"check {s.id} is defined for d in {s.dims}, got d={config.d}")
    cfg = config_dict(config)
    reports = [CheckReport(s.id, cfg) for s in specs]
    start = time.perf_counter()
    graphs6 = [graph6_encode(g) for g in stream]
    if not graphs6 and not allow_empty:
        raise ValueError("empty graph stream")
    tasks = [(g6, tuple(ids), config) for g6 in graphs6]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_worker, tasks, chunksize=max(1, len(tasks) // (8 * jobs))))
    else:
        results = [_worker(t) for t in tasks]
    for g6, (outs, note) in zip(graphs6, results):
        for spec, rep, out in zip(specs, reports, outs):
            rep.scanned += 1
            if out.status is Status.NA:
                continue
            rep.applicable += 1
            entry = {"graph6": g6}
            if out.diag:
                entry["diag"] = out.diag
            if out.status is Status.PASS:
                rep.passed += 1
            elif out.status is Status.UNKNOWN:
                rep.unknown.append(entry)
            elif spec.is_search(config.d):
                rep.findings.append(entry)
            else:
                rep.violations.append(entry)
        if note is not None:
            for rep in reports:
                if rep.check == "t46-3n9":
                    rep.notes.append({"graph6": g6, **note})
    elapsed = time.perf_counter() - start
    for rep in reports:
        rep.runtime = elapsed
    return reports


def run_check(check_id: str, stream: Iterable[Graph], config: GenericConfig, jobs: int = 1) -> CheckReport:
    return run_checks([check_id], stream, config, jobs)[0]


def applicable_checks(d: int) -> list[str]:
    return [i for i, s in REGISTRY.items() if d in s.dims]


# --- sharpness -------------------------------------------------------------------


def sharpness_suite(d: int, n_max: int, config: GenericConfig) -> CheckReport:
    """K_{d+1, n-d-1} attains (d+1)n - (d+1)^2 edges and is minimally globally d-rigid."""
    if not 1 <= d <= 3:
        raise ValueError("sharpness suite supports d in 1..3")
    if n_max > EXHAUSTIVE_N:
        raise ValueError(f"sharpness suite supports n_max <= {EXHAUSTIVE_N}")
    cfg = config.with_dim(d)
    start_n = comb(d + 2, 2) + 1
    rep = CheckReport("sharpness", config_dict(cfg))
    t0 = time.perf_counter()
    for n in range(start_n, n_max + 1):
        g = complete_bipartite(d + 1, n - d - 1)
        ctx = GraphContext(g, cfg)
        rep.scanned += 1
        rep.applicable += 1
        bound = (d + 1) * n - (d + 1) ** 2
        entry = {"graph6": graph6_encode(g), "n": n, "edges": g.m, "bound": bound}
        if g.m == bound and ctx.min_globally_rigid:
            rep.passed += 1
        else:
            rep.violations.append({**entry, "min_globally_rigid": ctx.min_globally_rigid})
    # one vertex short of the threshold: minimally rigid, not globally rigid
    n0 = start_n - 1
    if n0 >= d + 2:
        g = complete_bipartite(d + 1, n0 - d - 1)
        ctx = GraphContext(g, cfg)
        minimally_rigid = ctx.rigid and g.m == rank_complete(n0, d)
        plus = g.add_edge(0, 1)
        pctx = GraphContext(plus, cfg)
        rep.notes.append(
            {
                "graph6": graph6_encode(g),
                "n": n0,
                "minimally_rigid": minimally_rigid,
                "globally_rigid": ctx.globally_rigid,
                "plus_edge_edges": plus.m,
                "plus_edge_bound_excess": plus.m - ((d + 1) * n0 - (d + 1) ** 2),
                "plus_edge_stress_independent": pctx.stress_independent.value.value,
            }
        )
    rep.runtime = time.perf_counter() - t0
    return rep


__all__ = [
    "CheckReport",
    "CheckSpec",
    "GraphContext",
    "Outcome",
    "REGISTRY",
    "Status",
    "applicable_checks",
    "evaluate_graph",
    "graph_seed",
    "run_check",
    "run_checks",
    "sharpness_suite",
]
