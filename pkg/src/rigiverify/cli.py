"""``rigiverify`` command line.

Exit codes: 0 success, 1 check violations, 2 usage or input errors.
Every output record is one JSON line carrying the run config and the tool
version.  Records are written in input order whatever ``--jobs`` is.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from typing import Iterator

from . import __version__
from .checks import REGISTRY, GraphContext, applicable_checks, config_dict, run_checks, sharpness_suite
from .enumeration import MAX_BUILTIN_N, EnumerationLimitError, enumerate_graphs, extend_by_vertex
from .ffalgebra import DEFAULT_PRIME
from .graph import FAMILIES, Graph, construct_family, is_connected
from .graph6 import Graph6Error, graph6_decode, graph6_encode, read_graph6
from .matroid import ear_decomposition
from .rigidity import GenericConfig
from .stress import is_redundantly_d_rigid, shared_stress_profile

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(record: dict) -> str:
    return json.dumps(record, separators=(",", ":"))


def _seed(arg: int | None) -> int:
    if arg is not None:
        return arg
    env = os.environ.get("RIGIVERIFY_SEED")
    if env is None:
        return 1
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"RIGIVERIFY_SEED must be an integer, got {env!r}") from None


def _config(args) -> GenericConfig:
    try:
        return GenericConfig(d=args.dim, prime=args.prime, seed=_seed(args.seed), trials=args.trials)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _parse_params(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--params must be comma-separated integers, got {text!r}") from None


@contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _input_graphs(args) -> list[Graph]:
    if getattr(args, "family", None):
        try:
            return [construct_family(args.family, _parse_params(args.params))]
        except (KeyError, ValueError) as exc:
            raise UsageError(str(exc).strip("'\"")) from None
    if getattr(args, "enumerate", None) is not None:
        try:
            return list(enumerate_graphs(args.enumerate))
        except EnumerationLimitError as exc:
            raise UsageError(str(exc)) from None
    src = args.input
    try:
        if src is None or src == "-":
            return [g for _, g in read_graph6(sys.stdin)]
        with open(src, encoding="utf-8") as fh:
            return [g for _, g in read_graph6(fh)]
    except Graph6Error as exc:
        raise UsageError(f"{src or '<stdin>'}: {exc}") from None
    except OSError as exc:
        raise UsageError(str(exc)) from None


# --- analyze -----------------------------------------------------------------------


def _edge_lists(oracle, masks) -> list[list[list[int]]]:
    return [[list(e) for e in oracle.edges_of(m)] for m in masks]


def analyze_graph(g: Graph, config: GenericConfig) -> dict:
    """Per-graph record (without config/version)."""
    ctx = GraphContext(g, config)
    o = ctx.o
    dec = ctx.components
    prof = shared_stress_profile(o)
    rec = {
        "graph6": graph6_encode(g),
        "n": g.n,
        "edges": g.m,
        "rank": o.rank(),
        "rigid": ctx.rigid,
        "independent": ctx.independent,
        "circuit": ctx.circuit,
        "rd_connected": ctx.rd_connected,
        "components": _edge_lists(o, dec.nontrivial),
        "bridges": [e[0] for e in _edge_lists(o, dec.bridges)],
        "stress_dim": prof.stress_dim,
        "sigma": prof.sigma,
        "s": prof.s,
        "stress_trial": prof.trial,
        "globally_rigid": ctx.globally_rigid,
        "redundantly_rigid": is_redundantly_d_rigid(o),
        "minimally_globally_rigid": ctx.min_globally_rigid,
        "stress_independent": ctx.stress_independent.to_dict(),
        "ear_decomposition": None,
    }
    if ctx.rd_connected:
        ears = ear_decomposition(o)
        rec["ear_decomposition"] = {"ears": ears.t, "lobe_sizes": ears.lobe_sizes()}
    return rec


def _analyze_task(args) -> dict:
    g6, config = args
    return analyze_graph(graph6_decode(g6), config)


def _map_ordered(fn, tasks, jobs: int) -> Iterator:
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            yield from pool.map(fn, tasks, chunksize=max(1, len(tasks) // (8 * jobs)))
    else:
        for t in tasks:
            yield fn(t)


def cmd_analyze(args) -> int:
    config = _config(args)
    graphs = _input_graphs(args)
    head = {"config": config_dict(config), "version": __version__}
    tasks = [(graph6_encode(g), config) for g in graphs]
    with _output(args.out) as out:
        for idx, rec in enumerate(_map_ordered(_analyze_task, tasks, args.jobs)):
            out.write(_dump({"index": idx, **rec, **head}) + "\n")
    return EXIT_OK


# --- check -------------------------------------------------------------------------


def cmd_check(args) -> int:
    config = _config(args)
    ids = applicable_checks(config.d) if args.id == "all" else [x for x in args.id.split(",") if x]
    unknown = [i for i in ids if i not in REGISTRY]
    if unknown:
        raise UsageError(f"unknown check id(s): {', '.join(unknown)}; see 'rigiverify list'")
    graphs = _input_graphs(args)
    try:
        reports = run_checks(ids, graphs, config, jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    bad = False
    with _output(args.out) as out:
        for rep in reports:
            out.write(_dump({**rep.to_dict(), "version": __version__}) + "\n")
            bad = bad or not rep.ok
            print(
                f"{rep.check}: scanned={rep.scanned} applicable={rep.applicable} "
                f"violations={len(rep.violations)} unknown={rep.unknown_count} "
                f"findings={len(rep.findings)} runtime={rep.runtime:.2f}s",
                file=sys.stderr,
            )
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_list(args) -> int:
    for cid, spec in REGISTRY.items():
        if not spec.search:
            mode = "theorem"
        elif spec.search_from_d > 1:
            mode = f"search(d>={spec.search_from_d})"
        else:
            mode = "search"
        print(f"{cid}\t{mode}\td={','.join(map(str, spec.dims))}\t{spec.statement}")
    return EXIT_OK


# --- enumerate / extend ------------------------------------------------------------


def _enum_filter(spec: str | None, config: GenericConfig):
    if not spec:
        return None
    preds = []
    for item in spec.split(","):
        name, _, val = item.strip().partition("=")
        if name == "connected":
            preds.append(is_connected)
        elif name == "min-degree":
            try:
                k = int(val)
            except ValueError:
                raise UsageError("min-degree filter needs a value, e.g. min-degree=3") from None
            preds.append(lambda g, k=k: g.n == 0 or min(g.degree(v) for v in range(g.n)) >= k)
        elif name == "rd-connected":
            preds.append(lambda g: GraphContext(g, config).rd_connected)
        elif name == "2-stress-independent":
            cfg2 = config.with_dim(2)
            preds.append(lambda g, c=cfg2: GraphContext(g, c).stress_independent.is_true)
        else:
            raise UsageError(f"unknown filter {name!r}")
    return lambda g: all(p(g) for p in preds)


def cmd_enumerate(args) -> int:
    config = _config(args)
    if args.n > MAX_BUILTIN_N:
        raise UsageError(
            f"built-in enumeration stops at n={MAX_BUILTIN_N}; for n={MAX_BUILTIN_N + 1} run "
            f"'rigiverify enumerate {MAX_BUILTIN_N} | rigiverify extend', beyond that pipe graph6 "
            "from an external generator such as nauty geng"
        )
    if args.n < 0:
        raise UsageError("n must be non-negative")
    pred = _enum_filter(args.filter, config)
    with _output(args.out) as out:
        for g in enumerate_graphs(args.n, pred):
            out.write(graph6_encode(g) + "\n")
    return EXIT_OK


def cmd_extend(args) -> int:
    parents = _input_graphs(args)
    sizes = {g.n for g in parents}
    if len(sizes) > 1:
        raise UsageError("extend expects graphs of a single order")
    with _output(args.out) as out:
        for g in extend_by_vertex(parents, args.min_edges):
            out.write(graph6_encode(g) + "\n")
    return EXIT_OK


def cmd_sharpness(args) -> int:
    config = _config(args)
    try:
        rep = sharpness_suite(config.d, args.n_max, config)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    with _output(args.out) as out:
        out.write(_dump({**rep.to_dict(), "version": __version__}) + "\n")
    return EXIT_OK if rep.ok else EXIT_VIOLATION


# --- parser ------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, source: bool = True) -> None:
    p.add_argument("--dim", "-d", type=int, default=2, help="dimension d (default 2)")
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME, help="field modulus (default 2^62-57)")
    p.add_argument("--seed", type=int, default=None, help="master seed (default $RIGIVERIFY_SEED or 1)")
    p.add_argument("--trials", type=int, default=2, help="independent coordinate draws (default 2)")
    p.add_argument("--jobs", "-j", type=int, default=1, help="worker processes")
    p.add_argument("--out", "-o", default=None, help="output file (default stdout)")
    if source:
        p.add_argument("input", nargs="?", default=None, help="graph6 file (default stdin)")
        p.add_argument("--family", choices=sorted(FAMILIES), help="build one named graph instead of reading input")
        p.add_argument("--params", default=None, help="family parameters, e.g. 3,4")
        p.add_argument("--enumerate", type=int, default=None, metavar="N", help=f"all graphs on N <= {MAX_BUILTIN_N} vertices")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rigiverify", description="Generic rigidity matroid computations and theorem checks.")
    p.add_argument("--version", action="version", version=f"rigiverify {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="per-graph rigidity report (JSON Lines)")
    _common(a)
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("check", help="run registered checks over a graph stream")
    c.add_argument("id", help="check id, comma-separated ids, or 'all'")
    _common(c)
    c.set_defaults(func=cmd_check)

    ls = sub.add_parser("list", help="list registered checks")
    ls.set_defaults(func=cmd_list)

    e = sub.add_parser("enumerate", help="graph6 list of all graphs on n vertices")
    e.add_argument("n", type=int)
    e.add_argument("--filter", default=None, help="connected, min-degree=K, rd-connected, 2-stress-independent")
    _common(e, source=False)
    e.set_defaults(func=cmd_enumerate)

    x = sub.add_parser("extend", help="all (n+1)-vertex graphs from a complete n-vertex graph6 list")
    x.add_argument("--min-edges", type=int, default=0)
    x.add_argument("input", nargs="?", default=None)
    x.add_argument("--out", "-o", default=None)
    x.set_defaults(func=cmd_extend)

    s = sub.add_parser("sharpness", help="K_{d+1,n-d-1} sharpness suite")
    s.add_argument("--n-max", type=int, default=10)
    _common(s, source=False)
    s.set_defaults(func=cmd_sharpness)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"rigiverify: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
