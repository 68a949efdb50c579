"""Compare the numba and pure-numpy kernels.

Each backend runs in its own subprocess because the backend is fixed at
import time.  Usage::

    python benchmarks/bench_backends.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, time
import numpy as np
from rigiverify._kernels import BACKEND
from rigiverify.ffalgebra import prime_field, DEFAULT_PRIME
from rigiverify.enumeration import enumerate_graphs
from rigiverify.rigidity import GenericConfig, RankOracle
from rigiverify.matroid import components

F = prime_field(DEFAULT_PRIME)
rng = np.random.default_rng(0)
mats = [F.encode(rng.integers(0, DEFAULT_PRIME, size=(40, 40), dtype=np.uint64)) for _ in range(20)]
F.rank(mats[0])  # compile outside the timer
out = {"backend": BACKEND}

t = time.perf_counter()
for _ in range({repeat}):
    for m in mats:
        F.rank(m)
out["rank_40x40_x20"] = (time.perf_counter() - t) / {repeat}

graphs = list(enumerate_graphs(6))
cfg = GenericConfig()
components(RankOracle(graphs[-1], cfg))
t = time.perf_counter()
for _ in range({repeat}):
    for g in graphs:
        components(RankOracle(g, cfg))
out["components_all_n6"] = (time.perf_counter() - t) / {repeat}
print(json.dumps(out))
"""


def run(backend: str, repeat: int) -> dict:
    env = dict(os.environ, RIGIVERIFY_BACKEND=backend)
    code = WORKLOAD.replace("{repeat}", str(repeat))
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rows = [run(b, args.repeat) for b in ("numba", "numpy")]
    keys = [k for k in rows[0] if k != "backend"]
    print(f"{'workload':<24}{'numba (s)':>12}{'numpy (s)':>12}{'speedup':>10}")
    for k in keys:
        a, b = rows[0][k], rows[1][k]
        print(f"{k:<24}{a:>12.4f}{b:>12.4f}{b / a:>10.1f}x")


if __name__ == "__main__":
    main()
