"""Equilibrium stresses, stress matrices and shared stress nullity.

For one coordinate draw, the stresses of ``F`` form the left kernel of the
rigidity matrix rows of ``F``.  Since a stress matrix depends linearly on
its stress, the intersection of the kernels of all stress matrices equals
the kernel of the vertically stacked basis matrices.

A trial counts only if its rigidity rank equals the cross-trial maximum;
at such a trial the stress space has the generic dimension, and a
degenerate draw can then only shrink s_d, so s_d is the maximum over the
valid trials.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .ffalgebra import left_kernel, rank, stack
from .rigidity import RankOracle, _popcount, is_d_rigid
from .matroid import components


def stress_matrix(n: int, edges, omega, p: int) -> np.ndarray:
    """n x n matrix: -w(uv) off the diagonal on edges, row sums zero."""
    out = [[0] * n for _ in range(n)]
    for (u, v), w in zip(edges, omega):
        w = int(w)
        out[u][v] -= w
        out[v][u] -= w
        out[u][u] += w
        out[v][v] += w
    return np.array([[x % p for x in row] for row in out], dtype=np.uint64).reshape(n, n)


def _basis_at(oracle: RankOracle, F: int, trial: int) -> np.ndarray:
    return left_kernel(oracle.matrix(trial, F), oracle.config.prime)


def stress_basis(oracle: RankOracle, F: int | None = None, trial: int | None = None) -> list[np.ndarray]:
    """Basis of the stress space of F at ``trial`` (default: the best trial).

    Each vector is indexed like ``oracle.edges_of(F)``.
    """
    F = oracle.full if F is None else F
    t = oracle.best_trial(F) if trial is None else trial
    return list(_basis_at(oracle, F, t))


def stress_matrices(oracle: RankOracle, F: int | None = None, trial: int | None = None) -> list[np.ndarray]:
    F = oracle.full if F is None else F
    t = oracle.best_trial(F) if trial is None else trial
    edges = oracle.edges_of(F)
    p = oracle.config.prime
    return [stress_matrix(oracle.n, edges, w, p) for w in _basis_at(oracle, F, t)]


@dataclass(frozen=True)
class StressProfile:
    n: int
    d: int
    stress_dim: int
    sigma: int
    s: int
    trial: int
    valid: bool
    trial_s: tuple[int | None, ...]

    def to_dict(self) -> dict:
        out = asdict(self)
        out["trial_s"] = list(self.trial_s)
        return out


def shared_stress_profile(oracle: RankOracle, F: int | None = None) -> StressProfile:
    F = oracle.full if F is None else F
    n, p = oracle.n, oracle.config.prime
    ranks = oracle.trial_ranks(F)
    top = max(ranks)
    edges = oracle.edges_of(F)
    per: list[int | None] = []
    for t, r in enumerate(ranks):
        if r != top:
            per.append(None)
            continue
        mats = [stress_matrix(n, edges, w, p) for w in _basis_at(oracle, F, t)]
        per.append(rank(stack(mats, n), p) if mats else 0)
    best_t = max((t for t, s in enumerate(per) if s is not None), key=lambda t: (per[t], -t))
    s = per[best_t]
    return StressProfile(
        n=n,
        d=oracle.d,
        stress_dim=_popcount(F) - top,
        sigma=n - s,
        s=s,
        trial=best_t,
        valid=True,
        trial_s=tuple(per),
    )


def shared_stress_rank(oracle: RankOracle, F: int | None = None) -> int:
    return shared_stress_profile(oracle, F).s


def is_globally_d_rigid(oracle: RankOracle, F: int | None = None) -> bool:
    """Stress-rank criterion for n >= d+2; below that, completeness."""
    F = oracle.full if F is None else F
    n, d = oracle.n, oracle.d
    if n <= d + 1:
        return _popcount(F) == n * (n - 1) // 2
    if not is_d_rigid(oracle, F):
        return False
    return shared_stress_rank(oracle, F) == n - d - 1


def is_redundantly_d_rigid(oracle: RankOracle, F: int | None = None) -> bool:
    F = oracle.full if F is None else F
    if not is_d_rigid(oracle, F):
        return False
    return all(is_d_rigid(oracle, F & ~(1 << k)) for k in oracle.rows(F))


def is_minimally_globally_d_rigid(oracle: RankOracle, F: int | None = None) -> bool:
    F = oracle.full if F is None else F
    if not is_globally_d_rigid(oracle, F):
        return False
    return not any(is_globally_d_rigid(oracle, F & ~(1 << k)) for k in oracle.rows(F))


def has_Rd_bridge(oracle: RankOracle, F: int | None = None) -> bool:
    F = oracle.full if F is None else F
    top = oracle.rank(F)
    return any(oracle.rank(F & ~(1 << k)) < top for k in oracle.rows(F))


def is_minimally_Rd_bridgeless(oracle: RankOracle, F: int | None = None) -> bool:
    F = oracle.full if F is None else F
    if F == 0 or has_Rd_bridge(oracle, F):
        return False
    return all(has_Rd_bridge(oracle, F & ~(1 << k)) for k in oracle.rows(F))


def bridges(oracle: RankOracle, F: int | None = None) -> int:
    """Mask of the R_d-bridges (coloops) of F."""
    out = 0
    for c in components(oracle, F).bridges:
        out |= c
    return out
