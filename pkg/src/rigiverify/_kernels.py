"""Hot numeric kernels: modular row reduction and canonical graph labelling.

Two interchangeable backends live here.  The numba backend keeps matrix
entries as ``uint64`` in Montgomery form (R = 2**64) so that a 62-bit prime
can be multiplied without a 128-bit integer type.  The numpy backend stores
entries as Python integers in ``object`` arrays and reduces with ``%``; it is
slower but has no compilation step and works for any prime.

The backend is picked once at import time from ``RIGIVERIFY_BACKEND``
(``numba`` or ``numpy``); when unset, numba is used if it imports.
"""

from __future__ import annotations

import itertools
import os
from functools import lru_cache

import numpy as np

_requested = os.environ.get("RIGIVERIFY_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise ImportError(f"RIGIVERIFY_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

try:
    if _requested == "numpy":
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda fn: fn


BACKEND = "numba" if HAVE_NUMBA else "numpy"

_M32 = np.uint64(0xFFFFFFFF)
_S32 = np.uint64(32)
_ZERO = np.uint64(0)
_ONE = np.uint64(1)


# --- Montgomery arithmetic (numba backend) ---------------------------------


@njit(inline="always", cache=True)
def _mul128(a, b):
    a0 = a & _M32
    a1 = a >> _S32
    b0 = b & _M32
    b1 = b >> _S32
    p00 = a0 * b0
    p01 = a0 * b1
    p10 = a1 * b0
    p11 = a1 * b1
    mid = (p00 >> _S32) + (p01 & _M32) + (p10 & _M32)
    lo = (mid << _S32) | (p00 & _M32)
    hi = p11 + (p01 >> _S32) + (p10 >> _S32) + (mid >> _S32)
    return hi, lo


@njit(inline="always", cache=True)
def _montmul(a, b, p, pinv):
    # REDC(a*b); valid for odd p < 2**63 and a, b < p
    hi, lo = _mul128(a, b)
    m = lo * pinv
    mh, _ = _mul128(m, p)
    t = hi + mh
    if lo != _ZERO:
        t += _ONE
    if t >= p:
        t -= p
    return t


@njit(inline="always", cache=True)
def _subm(a, b, p):
    if a >= b:
        return a - b
    return a + (p - b)


@njit(cache=True)
def _montinv(a, p, pinv, one):
    e = p - np.uint64(2)
    acc = one
    base = a
    while e != _ZERO:
        if e & _ONE:
            acc = _montmul(acc, base, p, pinv)
        base = _montmul(base, base, p, pinv)
        e = e >> _ONE
    return acc


@njit(cache=True)
def _to_mont(a, r2, p, pinv):
    out = np.empty_like(a)
    flat_in = a.ravel()
    flat_out = out.ravel()
    for k in range(flat_in.size):
        flat_out[k] = _montmul(flat_in[k], r2, p, pinv)
    return out


@njit(cache=True)
def _from_mont(a, p, pinv):
    out = np.empty_like(a)
    flat_in = a.ravel()
    flat_out = out.ravel()
    for k in range(flat_in.size):
        flat_out[k] = _montmul(flat_in[k], _ONE, p, pinv)
    return out


@njit(cache=True)
def _rank_mont(a, p, pinv, one):
    a = a.copy()
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if a[i, c] != _ZERO:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(c, n):
                tmp = a[r, k]
                a[r, k] = a[piv, k]
                a[piv, k] = tmp
        inv = _montinv(a[r, c], p, pinv, one)
        for k in range(c, n):
            a[r, k] = _montmul(a[r, k], inv, p, pinv)
        for i in range(r + 1, m):
            f = a[i, c]
            if f != _ZERO:
                for k in range(c, n):
                    a[i, k] = _subm(a[i, k], _montmul(f, a[r, k], p, pinv), p)
        r += 1
    return r


@njit(cache=True)
def _rref_mont(a, p, pinv, one):
    a = a.copy()
    m, n = a.shape
    pivots = np.empty(min(m, n), dtype=np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if a[i, c] != _ZERO:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(n):
                tmp = a[r, k]
                a[r, k] = a[piv, k]
                a[piv, k] = tmp
        inv = _montinv(a[r, c], p, pinv, one)
        for k in range(c, n):
            a[r, k] = _montmul(a[r, k], inv, p, pinv)
        for i in range(m):
            if i == r:
                continue
            f = a[i, c]
            if f != _ZERO:
                for k in range(c, n):
                    a[i, k] = _subm(a[i, k], _montmul(f, a[r, k], p, pinv), p)
        pivots[r] = c
        r += 1
    return a, pivots[:r]


@njit(cache=True)
def _ranks_of_rowsets_mont(a, rowsets, p, pinv, one):
    out = np.empty(rowsets.shape[0], dtype=np.int64)
    for s in range(rowsets.shape[0]):
        sel = np.flatnonzero(rowsets[s])
        out[s] = _rank_mont(a[sel], p, pinv, one)
    return out


# --- object-array arithmetic (numpy backend) -------------------------------


def _rank_obj(a: np.ndarray, p: int) -> int:
    return len(_rref_obj(a, p, full=False)[1])


def _rref_obj(a: np.ndarray, p: int, full: bool = True):
    a = a.copy()
    m, n = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c] != 0)
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = (a[r, c:] * inv) % p
        lo = 0 if full else r + 1
        rows = np.arange(lo, m)
        rows = rows[rows != r]
        if rows.size:
            f = a[rows, c]
            hit = rows[f != 0]
            if hit.size:
                a[np.ix_(hit, np.arange(c, n))] = (
                    a[np.ix_(hit, np.arange(c, n))] - np.outer(a[hit, c], a[r, c:])
                ) % p
        pivots.append(c)
        r += 1
    return a, np.asarray(pivots, dtype=np.int64)


# --- public backend object -------------------------------------------------


class PrimeField:
    """Arithmetic context for one prime modulus.

    Matrices handed to :meth:`rank` and :meth:`rref` must be in the backend's
    internal representation, obtained with :meth:`encode`.
    """

    def __init__(self, p: int, backend: str | None = None):
        p = int(p)
        if p < 3 or p % 2 == 0 or p >= 2**63:
            raise ValueError(f"prime must be odd and below 2**63, got {p}")
        self.p = p
        self.backend = backend or BACKEND
        if self.backend == "numba" and not HAVE_NUMBA:
            raise ValueError("numba backend requested but numba is unavailable")
        if self.backend == "numba":
            self._p = np.uint64(p)
            self._pinv = np.uint64((-pow(p, -1, 2**64)) % 2**64)
            self._one = np.uint64(2**64 % p)
            self._r2 = np.uint64(pow(2, 128, p))

    def encode(self, a) -> np.ndarray:
        """Plain residues (any integer array-like) -> internal representation."""
        if self.backend == "numba":
            arr = np.asarray(a)
            if arr.dtype != np.uint64:
                arr = np.asarray(np.mod(np.asarray(a, dtype=object), self.p), dtype=np.uint64)
            arr = np.ascontiguousarray(arr)
            if arr.ndim == 1:
                return _to_mont(arr.reshape(1, -1), self._r2, self._p, self._pinv).reshape(-1)
            return _to_mont(arr, self._r2, self._p, self._pinv)
        return np.mod(np.asarray(a, dtype=object), self.p)

    def decode(self, a: np.ndarray) -> np.ndarray:
        """Internal representation -> plain residues as ``uint64``."""
        if self.backend == "numba":
            a = np.ascontiguousarray(a)
            if a.ndim == 1:
                return _from_mont(a.reshape(1, -1), self._p, self._pinv).reshape(-1)
            return _from_mont(a, self._p, self._pinv)
        return np.asarray(a, dtype=np.uint64)

    def zeros(self, shape) -> np.ndarray:
        if self.backend == "numba":
            return np.zeros(shape, dtype=np.uint64)
        return np.zeros(shape, dtype=object)

    def rank(self, a: np.ndarray) -> int:
        if a.shape[0] == 0 or a.shape[1] == 0:
            return 0
        if self.backend == "numba":
            return int(_rank_mont(np.ascontiguousarray(a), self._p, self._pinv, self._one))
        return _rank_obj(a, self.p)

    def rref(self, a: np.ndarray):
        """Return (reduced matrix, pivot columns) in internal representation."""
        if a.shape[0] == 0 or a.shape[1] == 0:
            return a.copy(), np.zeros(0, dtype=np.int64)
        if self.backend == "numba":
            return _rref_mont(np.ascontiguousarray(a), self._p, self._pinv, self._one)
        return _rref_obj(a, self.p)

    def ranks_of_rowsets(self, a: np.ndarray, rowsets: np.ndarray) -> np.ndarray:
        """Rank of ``a[rowsets[s]]`` for every boolean row selector ``s``."""
        if self.backend == "numba":
            return _ranks_of_rowsets_mont(
                np.ascontiguousarray(a), np.ascontiguousarray(rowsets, dtype=np.bool_),
                self._p, self._pinv, self._one,
            )
        return np.array([self.rank(a[np.flatnonzero(s)]) for s in rowsets], dtype=np.int64)

    # scalar helpers used outside the hot loops; plain residues in and out
    def neg(self, x: int) -> int:
        return (-int(x)) % self.p


# --- canonical labelling -----------------------------------------------------


@njit(cache=True)
def _canonical_perm(adj):
    """Vertex order minimising the graph6-order upper-triangle bit string.

    Depth-first over placements with pruning: the column added when placing
    the vertex at position j is compared with the best column seen so far;
    a smaller column resets everything to its right to all ones.
    """
    n = adj.shape[0]
    best = np.ones((n, n), dtype=np.uint8)
    best_perm = np.arange(n)
    if n <= 1:
        return best_perm
    perm = np.zeros(n, dtype=np.int64)
    used = np.zeros(n, dtype=np.bool_)
    nxt = np.zeros(n + 1, dtype=np.int64)
    depth = 0
    while depth >= 0:
        if depth == n:
            best_perm[:] = perm
            depth -= 1
            used[perm[depth]] = False
            continue
        v = nxt[depth]
        while v < n and used[v]:
            v += 1
        if v == n:
            nxt[depth] = 0
            depth -= 1
            if depth >= 0:
                used[perm[depth]] = False
            continue
        nxt[depth] = v + 1
        # compare column `depth` (pairs (i, depth), i < depth)
        state = 0
        for i in range(depth):
            bit = adj[perm[i], v]
            if bit != best[i, depth]:
                state = -1 if bit < best[i, depth] else 1
                break
        if state > 0:
            continue
        perm[depth] = v
        used[v] = True
        if state < 0:
            for i in range(depth):
                best[i, depth] = adj[perm[i], v]
            for j in range(depth + 1, n):
                for i in range(j):
                    best[i, j] = 1
        depth += 1
        nxt[depth] = 0
    return best_perm


@lru_cache(maxsize=16)
def _perm_table(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)


def _canonical_perm_numpy(adj: np.ndarray) -> np.ndarray:
    n = adj.shape[0]
    if n <= 1:
        return np.arange(n)
    perms = _perm_table(n)
    cols = [(i, j) for j in range(1, n) for i in range(j)]
    bits = np.stack([adj[perms[:, i], perms[:, j]] for i, j in cols], axis=1).astype(np.int64)
    # lexsort keys: last key is primary
    order = np.lexsort(bits.T[::-1])
    return perms[order[0]]


def canonical_perm(adj: np.ndarray) -> np.ndarray:
    # the pruned search also runs (slower) as plain Python; brute force is a test oracle only
    return np.asarray(_canonical_perm(np.ascontiguousarray(adj, dtype=np.uint8)), dtype=np.int64)
