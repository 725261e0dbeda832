"""Small dense linear algebra over F_p (matrices are int numpy arrays)."""

from __future__ import annotations

import numpy as np


def _row_reduce(m: np.ndarray, p: int, ncols: int):
    """Reduce ``m`` in place to RREF over its first ``ncols`` columns; return pivot columns."""
    rows = m.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c] % p)[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = (m[r] * inv) % p
        for i in range(rows):
            if i != r and m[i, c] % p:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return pivots


def rank_mod(a, p: int) -> int:
    m = np.array(a, dtype=np.int64) % p
    return len(_row_reduce(m, p, m.shape[1]))


def inv_mod(a, p: int) -> np.ndarray | None:
    """Inverse of a square matrix over F_p, or None when singular."""
    a = np.array(a, dtype=np.int64) % p
    n = a.shape[0]
    m = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    piv = _row_reduce(m, p, n)
    if len(piv) < n:
        return None
    return m[:, n:] % p


def solve_mod(a, b, p: int) -> np.ndarray | None:
    """One solution x of a @ x = b over F_p (b a vector), or None if inconsistent."""
    a = np.array(a, dtype=np.int64) % p
    b = np.array(b, dtype=np.int64).reshape(-1, 1) % p
    ncols = a.shape[1]
    m = np.concatenate([a, b], axis=1)
    piv = _row_reduce(m, p, ncols)
    for i in range(len(piv), m.shape[0]):
        if m[i, ncols] % p:
            return None
    x = np.zeros(ncols, dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = m[i, ncols]
    return x % p


def batch_inv_mod(mats: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Invert a stack of square matrices; returns (inverses, ok-mask)."""
    out = np.zeros_like(mats)
    ok = np.zeros(mats.shape[0], dtype=bool)
    for i, m in enumerate(mats):
        inv = inv_mod(m, p)
        if inv is not None:
            out[i] = inv
            ok[i] = True
    return out, ok
