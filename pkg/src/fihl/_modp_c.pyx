# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled row reduction over a prime field.

Same contract as fihl._modp_py: in-place reduced row echelon form of an
int64 matrix with entries in [0, p), p an odd prime below 2**31 so every
intermediate product fits in a signed 64-bit word.
"""


cdef long long _mod_inverse(long long a, long long p):
    # Fermat: a^(p-2) mod p, square-and-multiply.
    cdef long long result = 1
    cdef long long base = a % p
    cdef long long e = p - 2
    while e > 0:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def rref_mod_p(long long[:, ::1] a, long long p):
    """Reduce a to RREF mod p in place; return (rank, pivot column list)."""
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t n = a.shape[1]
    cdef Py_ssize_t r = 0, i, j, c, piv
    cdef long long inv, f, v
    pivots = []
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                v = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = v
        if a[r, c] != 1:
            inv = _mod_inverse(a[r, c], p)
            for j in range(c, n):
                a[r, j] = a[r, j] * inv % p
        for i in range(m):
            if i == r:
                continue
            f = a[i, c]
            if f == 0:
                continue
            for j in range(c, n):
                v = (a[i, j] - f * a[r, j]) % p
                if v < 0:
                    v += p
                a[i, j] = v
        pivots.append(c)
        r += 1
    return r, pivots
