"""Exact linear algebra over a prime field F_p.

A field matrix is a 2-D ``numpy.uint64`` array of residues in ``[0, p)``.
All functions are pure; the modulus defaults to :data:`DEFAULT_PRIME`.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from ._kernels import PrimeField

#: Largest prime below 2**62.  Products of two residues fit in 124 bits.
DEFAULT_PRIME = 2**62 - 57


@lru_cache(maxsize=8)
def prime_field(p: int = DEFAULT_PRIME) -> PrimeField:
    return PrimeField(p)


def as_field_matrix(rows, p: int = DEFAULT_PRIME, cols: int | None = None) -> np.ndarray:
    """Reduce an integer array-like mod p; negative entries are allowed."""
    arr = np.asarray(rows, dtype=object)
    if arr.size == 0:
        width = cols if cols is not None else (arr.shape[1] if arr.ndim == 2 else 0)
        return np.zeros((0 if arr.ndim < 2 else arr.shape[0], width), dtype=np.uint64)
    if arr.ndim != 2:
        raise ValueError("field matrix must be two-dimensional")
    return np.asarray(np.mod(arr, p), dtype=np.uint64)


def rank(m: np.ndarray, p: int = DEFAULT_PRIME) -> int:
    F = prime_field(p)
    return F.rank(F.encode(m))


def rref(m: np.ndarray, p: int = DEFAULT_PRIME) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form (nonzero rows only) and its pivot columns."""
    F = prime_field(p)
    red, piv = F.rref(F.encode(m))
    return F.decode(red[: len(piv)]), np.asarray(piv, dtype=np.int64)


def _kernel_from_rref(red: np.ndarray, piv: np.ndarray, ncols: int, p: int) -> np.ndarray:
    free = [c for c in range(ncols) if c not in set(piv.tolist())]
    out = np.zeros((len(free), ncols), dtype=np.uint64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, c in enumerate(piv):
            v = int(red[i, f])
            if v:
                out[k, c] = p - v
    return out


def right_kernel(m: np.ndarray, p: int = DEFAULT_PRIME) -> np.ndarray:
    """Basis of {x : m x = 0}, one vector per row, one per free column."""
    m = np.asarray(m, dtype=np.uint64)
    ncols = m.shape[1]
    if m.shape[0] == 0:
        return np.eye(ncols, dtype=np.uint64)
    red, piv = rref(m, p)
    return _kernel_from_rref(red, piv, ncols, p)


def left_kernel(m: np.ndarray, p: int = DEFAULT_PRIME) -> np.ndarray:
    """Basis of {y : y m = 0}, one vector per row."""
    m = np.asarray(m, dtype=np.uint64)
    return right_kernel(np.ascontiguousarray(m.T), p)


def stack(ms: Sequence[np.ndarray], width: int | None = None) -> np.ndarray:
    """Vertical concatenation.  ``width`` is required when ``ms`` is empty."""
    if not ms:
        if width is None:
            raise ValueError("width is required to stack an empty list")
        return np.zeros((0, width), dtype=np.uint64)
    widths = {m.shape[1] for m in ms}
    if len(widths) != 1 or (width is not None and widths != {width}):
        raise ValueError(f"mismatched widths {sorted(widths)}")
    return np.vstack([np.asarray(m, dtype=np.uint64) for m in ms])


def matmul(a: np.ndarray, b: np.ndarray, p: int = DEFAULT_PRIME) -> np.ndarray:
    """Exact product mod p (object arithmetic; for checks, not hot paths)."""
    prod = np.asarray(a, dtype=object) @ np.asarray(b, dtype=object)
    return np.asarray(np.mod(prod, p), dtype=np.uint64)


def common_kernel_dim(ms: Sequence[np.ndarray], width: int, p: int = DEFAULT_PRIME) -> int:
    """dim of the intersection of the right kernels of ``ms``."""
    return width - rank(stack(list(ms), width), p)
