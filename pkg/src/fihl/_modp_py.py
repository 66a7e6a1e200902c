"""Pure-Python (numpy) row reduction over a prime field.

Fallback for the compiled kernel in fihl._modp_c; both produce the unique
RREF, so results are interchangeable.  Entries must lie in [0, p) with p
an odd prime below 2**31, keeping every product inside int64.
"""

from __future__ import annotations

import numpy as np


def rref_mod_p(a: np.ndarray, p: int) -> tuple[int, list[int]]:
    """Reduce a to RREF mod p in place; return (rank, pivot column list)."""
    m, n = a.shape
    r = 0
    pivots: list[int] = []
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv], c:] = a[[piv, r], c:]
        val = int(a[r, c])
        if val != 1:
            a[r, c:] = a[r, c:] * pow(val, -1, p) % p
        col = a[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            a[rows, c:] = (a[rows, c:] - np.outer(col[rows], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return r, pivots
