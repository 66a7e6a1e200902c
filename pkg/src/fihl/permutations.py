"""Permutations as 0-based image tuples: p[i] is the image of i."""

from __future__ import annotations

from .partitions import Partition, check_partition

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """p after q."""
    return tuple(p[x] for x in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def transposition(n: int, i: int, j: int) -> Perm:
    out = list(range(n))
    out[i], out[j] = out[j], out[i]
    return tuple(out)


def coxeter_generators(n: int) -> list[Perm]:
    """Adjacent transpositions (i, i+1) for 0 <= i < n-1."""
    return [transposition(n, i, i + 1) for i in range(n - 1)]


def cycle_type(p: Perm) -> Partition:
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        lengths.append(length)
    return check_partition(sorted(lengths, reverse=True))


def from_cycle_type(ct: Partition) -> Perm:
    """Canonical class representative: disjoint cycles on consecutive blocks."""
    out = []
    offset = 0
    for length in ct:
        out.extend(offset + (i + 1) % length for i in range(length))
        offset += length
    return tuple(out)


def sign(p: Perm) -> int:
    return -1 if (len(p) - len(cycle_type(p))) % 2 else 1
