"""Partitions, the containment order, and diagram surgery.

Partitions are trimmed weakly-decreasing tuples of positive integers; the
empty tuple () is the zero partition, so equality is structural.  All
enumeration orders are fixed (reverse-lexicographic) so downstream output
is byte-stable.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

Partition = tuple[int, ...]


def check_partition(parts) -> Partition:
    """Normalize an iterable of parts to a valid partition tuple.

    Trailing zeros are dropped; raises ValueError on negative or increasing
    parts.
    """
    p = tuple(int(x) for x in parts)
    while p and p[-1] == 0:
        p = p[:-1]
    for i, x in enumerate(p):
        if x <= 0:
            raise ValueError(f"non-positive part {x} in {parts!r}")
        if i > 0 and p[i - 1] < x:
            raise ValueError(f"parts not weakly decreasing in {parts!r}")
    return p


def parse_partition(text: str) -> Partition:
    """Parse the wire form "p1,p2,..."; "0" (or "") is the empty partition."""
    text = text.strip()
    if text in ("", "0"):
        return ()
    return check_partition(int(piece) for piece in text.split(","))


def format_partition(p: Partition) -> str:
    """Serialize to the wire form; the empty partition renders as "0"."""
    return ",".join(str(x) for x in p) if p else "0"


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of n, reverse-lexicographic: (n) first, (1,...,1) last."""
    if n < 0:
        raise ValueError("n must be nonnegative")

    def gen(total: int, cap: int) -> Iterator[Partition]:
        if total == 0:
            yield ()
            return
        for first in range(min(total, cap), 0, -1):
            for rest in gen(total - first, first):
                yield (first,) + rest

    return tuple(gen(n, n))


def leq(mu: Partition, lam: Partition) -> bool:
    """Containment of Young diagrams: mu_i <= lam_i for all i."""
    if len(mu) > len(lam):
        return False
    return all(m <= l for m, l in zip(mu, lam))


def transpose(lam: Partition) -> Partition:
    """Conjugate partition (reflect the diagram in the diagonal)."""
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > i) for i in range(lam[0]))


def drop_first_row(lam: Partition) -> Partition:
    """Remove the first row: (lam_2, lam_3, ...)."""
    return lam[1:]


def drop_first_column(lam: Partition) -> Partition:
    """Remove the first column: subtract one from every nonzero part."""
    return tuple(x - 1 for x in lam if x > 1)


def strip_reduce(lam: Partition, axis: str) -> Partition:
    """Row axis removes the first row, column axis the first column."""
    if axis == "row":
        return drop_first_row(lam)
    if axis == "column":
        return drop_first_column(lam)
    raise ValueError(f"axis must be 'row' or 'column', got {axis!r}")


def meet_join(lam: Partition, mu: Partition) -> tuple[Partition, Partition]:
    """Componentwise (min, max): the infimum and supremum for containment."""
    k = max(len(lam), len(mu))
    a = lam + (0,) * (k - len(lam))
    b = mu + (0,) * (k - len(mu))
    meet = tuple(min(x, y) for x, y in zip(a, b))
    join = tuple(max(x, y) for x, y in zip(a, b))
    return check_partition(meet), check_partition(join)


def strip_test(lam: Partition, mu: Partition, orientation: str) -> bool:
    """Is lam/mu a horizontal (<=1 box per column) or vertical strip?

    Requires mu contained in lam.  Horizontal is equivalent to
    drop_first_row(lam) <= mu, vertical to drop_first_column(lam) <= mu.
    """
    if not leq(mu, lam):
        raise ValueError(f"{mu} is not contained in {lam}")
    if orientation == "horizontal":
        return leq(drop_first_row(lam), mu)
    if orientation == "vertical":
        return leq(drop_first_column(lam), mu)
    raise ValueError(f"orientation must be 'horizontal' or 'vertical', got {orientation!r}")


def pieri_expand(nu: Partition, n: int, kind: str) -> list[Partition]:
    """Partitions mu of |nu|+n with nu <= mu and mu/nu a strip.

    kind='sign' asks for a vertical strip (inducing with the signature),
    kind='trivial' for a horizontal strip.  Multiplicity-free, so a plain
    list in enumeration order suffices.
    """
    if kind not in ("trivial", "sign"):
        raise ValueError(f"kind must be 'trivial' or 'sign', got {kind!r}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    orientation = "horizontal" if kind == "trivial" else "vertical"
    out = []
    for mu in partitions_of(sum(nu) + n):
        if leq(nu, mu) and strip_test(mu, nu, orientation):
            out.append(mu)
    return out


def subpartitions(lam: Partition) -> Iterator[Partition]:
    """All partitions contained in lam, in no particular order."""

    def gen(i: int, cap: int) -> Iterator[Partition]:
        if i == len(lam):
            yield ()
            return
        for x in range(min(cap, lam[i]), -1, -1):
            if x == 0:
                yield ()
            else:
                for rest in gen(i + 1, x):
                    yield (x,) + rest

    return gen(0, lam[0] if lam else 0)


def outer_corners(lam: Partition) -> list[tuple[int, int]]:
    """Corner boxes (row, col), 1-based, removable from the diagram."""
    corners = []
    for i, x in enumerate(lam):
        below = lam[i + 1] if i + 1 < len(lam) else 0
        if x > below:
            corners.append((i + 1, x))
    return corners


def remove_boxes(lam: Partition, boxes) -> Partition:
    """Remove the given corner boxes (each (row, col), 1-based) from lam."""
    parts = list(lam)
    for row, col in boxes:
        if parts[row - 1] != col:
            raise ValueError(f"box {(row, col)} is not a corner of {lam}")
        parts[row - 1] -= 1
    return check_partition(parts)


def add_box(lam: Partition, row: int) -> Partition:
    """Add one box at the end of the given 1-based row (new row allowed)."""
    parts = list(lam)
    if row == len(parts) + 1:
        parts.append(1)
    else:
        parts[row - 1] += 1
    return check_partition(parts)


def contains_box(lam: Partition, row: int, col: int) -> bool:
    """Box membership for 1-based (row, col)."""
    return 1 <= row <= len(lam) and 1 <= col <= lam[row - 1]
