"""Exact rational sparse matrices with a multi-prime modular fast path.

Exact mode runs fraction-free (Bareiss) elimination over the integers,
pivoting on entries of minimal magnitude to curb coefficient growth.
Modular mode reduces over at least two deterministic pseudo-random primes
above 2**30 and only reports a rank as exact when two primes agree; the
largest modular rank seen is always a certified lower bound.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from ._modp import rref_mod_p
from .errors import InternalCheckError

EXACT_COLUMN_LIMIT = 2000  # beyond this, auto mode switches to modular

_PRIME_SEED = 0x5F1A7


def _is_prime(n: int) -> bool:
    # deterministic Miller-Rabin, valid far beyond 2**32
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_stream():
    """Deterministic stream of primes in (2**30, 2**31), fixed seed."""
    rng = random.Random(_PRIME_SEED)
    seen = set()
    while True:
        candidate = rng.randrange(2**30 + 1, 2**31, 2)
        while not _is_prime(candidate):
            candidate += 2
        if candidate not in seen and candidate < 2**31:
            seen.add(candidate)
            yield candidate


@dataclass(frozen=True)
class SparseMatrix:
    """Immutable sparse matrix over the rationals; zeros are absent."""

    rows: int
    cols: int
    entries: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise ValueError(f"index {(i, j)} out of range for {self.rows}x{self.cols}")
            v = Fraction(v)
            if v:
                clean[(i, j)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, rows) -> "SparseMatrix":
        data = [list(r) for r in rows]
        m = len(data)
        n = len(data[0]) if m else 0
        entries = {(i, j): Fraction(v) for i, r in enumerate(data) for j, v in enumerate(r) if v}
        return cls(m, n, entries)

    @classmethod
    def from_columns(cls, rows: int, columns) -> "SparseMatrix":
        """columns: iterable of dicts row -> value."""
        entries = {}
        columns = list(columns)
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    entries[(i, j)] = Fraction(v)
        return cls(rows, len(columns), entries)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols, {})

    def __getitem__(self, key) -> Fraction:
        return self.entries.get(key, Fraction(0))

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (i, j), v in other.entries.items():
            by_row.setdefault(i, []).append((j, v))
        out: dict[tuple[int, int], Fraction] = {}
        for (i, k), v in self.entries.items():
            for j, w in by_row.get(k, ()):
                key = (i, j)
                out[key] = out.get(key, Fraction(0)) + v * w
        return SparseMatrix(self.rows, other.cols, out)

    def mul_vector(self, vec) -> list[Fraction]:
        out = [Fraction(0)] * self.rows
        for (i, j), v in self.entries.items():
            if vec[j]:
                out[i] += v * vec[j]
        return out

    def dense_rows(self) -> list[list[Fraction]]:
        rows = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def integer_rows(self) -> list[list[int]]:
        """Dense integer rows, denominators cleared per row (rank-safe)."""
        rows = [[0] * self.cols for _ in range(self.rows)]
        scale = [1] * self.rows
        for (i, _), v in self.entries.items():
            scale[i] = lcm(scale[i], v.denominator)
        for (i, j), v in self.entries.items():
            rows[i][j] = int(v * scale[i])
        return rows

    def to_int_array(self) -> np.ndarray:
        """int64 array; requires genuinely integral entries."""
        out = np.zeros((self.rows, self.cols), dtype=np.int64)
        for (i, j), v in self.entries.items():
            if v.denominator != 1:
                raise ValueError("matrix has non-integer entries")
            out[i, j] = int(v)
        return out

    def dump_coordinate_text(self) -> str:
        """Debug dump, one 'row col value' line per stored entry."""
        lines = [f"{i} {j} {v}" for (i, j), v in sorted(self.entries.items())]
        return "\n".join(lines)


def _rank_bareiss(rows: list[list[int]]) -> int:
    m = len(rows)
    n = len(rows[0]) if m else 0
    rank = 0
    prev = 1
    col_order = list(range(n))
    while True:
        best = None
        for i in range(rank, m):
            row = rows[i]
            for jj in range(rank, n):
                v = row[col_order[jj]]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, jj)
        if best is None:
            return rank
        _, pi, pj = best
        rows[rank], rows[pi] = rows[pi], rows[rank]
        col_order[rank], col_order[pj] = col_order[pj], col_order[rank]
        pivot_col = col_order[rank]
        pivot = rows[rank][pivot_col]
        for i in range(rank + 1, m):
            factor = rows[i][pivot_col]
            if factor == 0 and prev == 1:
                continue
            row_i, row_r = rows[i], rows[rank]
            for jj in range(rank + 1, n):
                c = col_order[jj]
                row_i[c] = (row_i[c] * pivot - factor * row_r[c]) // prev
            row_i[pivot_col] = 0
        prev = pivot
        rank += 1
        if rank == m or rank == n:
            return rank


def rank_exact(mat: SparseMatrix) -> int:
    if mat.is_zero():
        return 0
    return _rank_bareiss(mat.integer_rows())


def rank_modular(mat: SparseMatrix, max_primes: int = 5) -> int:
    if mat.is_zero():
        return 0
    rows = mat.integer_rows()
    arr = np.array(rows, dtype=object)
    seen: list[int] = []
    primes = prime_stream()
    for _ in range(max_primes):
        p = next(primes)
        reduced = (arr % p).astype(np.int64)
        r, _ = rref_mod_p(reduced, p)
        if r in seen:
            return r
        seen.append(r)
    raise InternalCheckError(f"modular ranks never agreed: {seen} (lower bound {max(seen)})")


def rank(mat: SparseMatrix, mode: str = "auto") -> int:
    """Rank of mat; mode is 'exact', 'modular' or 'auto' (size-based)."""
    if mode == "auto":
        mode = "exact" if mat.cols <= EXACT_COLUMN_LIMIT else "modular"
    if mode == "exact":
        return rank_exact(mat)
    if mode == "modular":
        return rank_modular(mat)
    raise ValueError(f"unknown rank mode {mode!r}")


def rational_rref(rows: list[list[Fraction]]) -> tuple[int, list[int], list[list[Fraction]]]:
    """In-place reduced row echelon form over Q: (rank, pivot cols, rows)."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        if inv != 1:
            rows[r] = [v * inv for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return r, pivots, rows


def kernel_basis(mat: SparseMatrix) -> list[list[Fraction]]:
    """Reduced rational kernel basis: one vector per free column, with the
    identity pattern on the free coordinates."""
    r, pivots, rref = rational_rref(mat.dense_rows())
    free = [c for c in range(mat.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        vec = [Fraction(0)] * mat.cols
        vec[f] = Fraction(1)
        for row_idx, p in enumerate(pivots):
            vec[p] = -rref[row_idx][f]
        basis.append(vec)
    return basis


def colspace_basis(mat: SparseMatrix) -> tuple[list[int], list[list[Fraction]]]:
    """(pivot column indices of mat, reduced basis of the column space).

    The basis vectors carry the identity pattern on their leading rows, so
    expressing any vector of the space over them is a coordinate gather.
    """
    _, pivots, _ = rational_rref(mat.dense_rows())
    r, _, reduced = rational_rref(mat.transpose().dense_rows())
    basis = [[reduced[k][i] for i in range(mat.rows)] for k in range(r)]
    return pivots, basis


def solve_in_colspace(mat: SparseMatrix, vec) -> list[Fraction] | None:
    """Coefficients expressing vec over the columns of mat, or None."""
    if len(vec) != mat.rows:
        raise ValueError("dimension mismatch")
    rows = mat.dense_rows()
    for i in range(mat.rows):
        rows[i].append(Fraction(vec[i]))
    r, pivots, rref = rational_rref(rows)
    if pivots and pivots[-1] == mat.cols:
        return None  # vec is independent of the columns
    coeffs = [Fraction(0)] * mat.cols
    for row_idx, p in enumerate(pivots):
        coeffs[p] = rref[row_idx][mat.cols]
    return coeffs


def modp_colspace(arr: np.ndarray, p: int) -> tuple[int, list[int], np.ndarray]:
    """Reduced column-space basis of an integer matrix mod p.

    Returns (rank, leading row indices R, basis B) with B of shape
    (rows, rank) and B[R] = I mod p.
    """
    a = (arr.T % p).astype(np.int64).copy()
    r, pivots = rref_mod_p(a, p)
    return r, pivots, a[:r].T.copy()


def modp_kernel(arr: np.ndarray, p: int) -> tuple[int, list[int], list[int], np.ndarray]:
    """Reduced kernel basis of an integer matrix mod p.

    Returns (rank, pivot cols P, free cols F, basis K) with K of shape
    (cols, len(F)) and K[F] = I mod p.
    """
    a = (arr % p).astype(np.int64).copy()
    r, pivots = rref_mod_p(a, p)
    free = [c for c in range(arr.shape[1]) if c not in set(pivots)]
    k = np.zeros((arr.shape[1], len(free)), dtype=np.int64)
    for i, f in enumerate(free):
        k[f, i] = 1
        for row_idx, pcol in enumerate(pivots):
            k[pcol, i] = (-int(a[row_idx, f])) % p
    return r, pivots, free, k
