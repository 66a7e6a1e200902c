"""Standard tableaux on skew diagrams, axial distances, Coxeter moves.

Boxes are 1-based (row, column) pairs, labels run 1..m.  Tableaux are
immutable; enumeration order is fixed by the row-reading word so golden
output never shifts.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import factorial

from .partitions import Partition, check_partition, contains_box, leq, transpose


@dataclass(frozen=True)
class SkewShape:
    """The boxes of outer not in inner, for inner contained in outer."""

    outer: Partition
    inner: Partition = ()

    def __post_init__(self):
        object.__setattr__(self, "outer", check_partition(self.outer))
        object.__setattr__(self, "inner", check_partition(self.inner))
        if not leq(self.inner, self.outer):
            raise ValueError(f"{self.inner} is not contained in {self.outer}")

    @cached_property
    def boxes(self) -> tuple[tuple[int, int], ...]:
        out = []
        for i, row_len in enumerate(self.outer, start=1):
            start = self.inner[i - 1] if i - 1 < len(self.inner) else 0
            out.extend((i, j) for j in range(start + 1, row_len + 1))
        return tuple(out)

    @property
    def size(self) -> int:
        return sum(self.outer) - sum(self.inner)

    def contains(self, row: int, col: int) -> bool:
        return contains_box(self.outer, row, col) and not contains_box(self.inner, row, col)

    def is_horizontal_strip(self) -> bool:
        cols = [c for _, c in self.boxes]
        return len(cols) == len(set(cols))

    def is_vertical_strip(self) -> bool:
        rows = [r for r, _ in self.boxes]
        return len(rows) == len(set(rows))


@dataclass(frozen=True)
class StandardTableau:
    """A standard labelling of a skew shape by 1..m.

    Stores both directions of the bijection: position(label) is O(1) for
    axial-distance queries, label_at(box) for standardness checks.
    """

    shape: SkewShape
    positions: tuple[tuple[int, int], ...]  # positions[k] is the box of label k+1

    def __post_init__(self):
        boxes = set(self.shape.boxes)
        if len(self.positions) != len(boxes) or set(self.positions) != boxes:
            raise ValueError("labels are not a bijection onto the shape")
        if not self._is_standard():
            raise ValueError(f"tableau is not standard: {self.positions}")

    def _is_standard(self) -> bool:
        by_box = {box: k + 1 for k, box in enumerate(self.positions)}
        for (r, c), label in by_box.items():
            if (r, c + 1) in by_box and by_box[(r, c + 1)] < label:
                return False
            if (r + 1, c) in by_box and by_box[(r + 1, c)] < label:
                return False
        return True

    @property
    def size(self) -> int:
        return len(self.positions)

    def box_of(self, label: int) -> tuple[int, int]:
        return self.positions[label - 1]

    def label_at(self, row: int, col: int) -> int:
        return self.positions.index((row, col)) + 1

    def content(self, label: int) -> int:
        r, c = self.box_of(label)
        return c - r

    def row_word(self) -> tuple[int, ...]:
        by_box = {box: k + 1 for k, box in enumerate(self.positions)}
        return tuple(by_box[box] for box in self.shape.boxes)

    def __str__(self) -> str:
        by_box = {box: k + 1 for k, box in enumerate(self.positions)}
        rows = []
        for i, row_len in enumerate(self.shape.outer, start=1):
            inner_len = self.shape.inner[i - 1] if i - 1 < len(self.shape.inner) else 0
            cells = ["."] * inner_len + [str(by_box[(i, j)]) for j in range(inner_len + 1, row_len + 1)]
            rows.append(" ".join(cells))
        return " / ".join(rows)


def standard_tableaux(shape: SkewShape) -> list[StandardTableau]:
    """All standard tableaux of the shape, sorted by row-reading word."""
    boxes = shape.boxes
    m = len(boxes)
    filled: dict[tuple[int, int], int] = {}
    positions: list[tuple[int, int]] = []
    out: list[StandardTableau] = []

    def placeable(r: int, c: int) -> bool:
        left_ok = c == 1 or not shape.contains(r, c - 1) or (r, c - 1) in filled
        up_ok = r == 1 or not shape.contains(r - 1, c) or (r - 1, c) in filled
        return left_ok and up_ok

    def place(label: int):
        if label > m:
            out.append(StandardTableau(shape, tuple(positions)))
            return
        for box in boxes:
            if box not in filled and placeable(*box):
                filled[box] = label
                positions.append(box)
                place(label + 1)
                positions.pop()
                del filled[box]

    place(1)
    out.sort(key=lambda t: t.row_word())
    return out


def t_rev(shape: SkewShape) -> StandardTableau:
    """The filling of a horizontal strip increasing left to right.

    This is the unique standard tableau whose pairwise axial distances
    a(j, i) for i < j are all positive.
    """
    if not shape.is_horizontal_strip():
        raise ValueError(f"{shape} is not a horizontal strip")
    positions = tuple(sorted(shape.boxes, key=lambda box: box[1]))
    return StandardTableau(shape, positions)


def axial(t: StandardTableau, j: int, i: int) -> int:
    """Axial distance from j to i: content(j) - content(i)."""
    if not (1 <= i <= t.size and 1 <= j <= t.size):
        raise ValueError(f"labels {i}, {j} out of range 1..{t.size}")
    return t.content(j) - t.content(i)


def coxeter_apply(t: StandardTableau, i: int) -> StandardTableau | None:
    """Swap labels i and i+1, or None when the swap is not standard.

    The swap fails exactly when the two labels sit in adjacent boxes of a
    row or column, i.e. |axial(t, i+1, i)| == 1.
    """
    if not (1 <= i < t.size):
        raise ValueError(f"generator index {i} out of range 1..{t.size - 1}")
    if abs(axial(t, i + 1, i)) == 1:
        return None
    positions = list(t.positions)
    positions[i - 1], positions[i] = positions[i], positions[i - 1]
    return StandardTableau(t.shape, tuple(positions))


def relative_tableaux(lam: Partition, nu: Partition) -> list[StandardTableau]:
    """Standard tableaux of lam whose restriction to nu uses labels 1..|nu|."""
    if not leq(nu, lam):
        raise ValueError(f"{nu} is not contained in {lam}")
    k = sum(nu)
    return [
        t
        for t in standard_tableaux(SkewShape(lam))
        if all(contains_box(nu, *t.box_of(label)) for label in range(1, k + 1))
    ]


def split_tableau(t: StandardTableau, nu: Partition) -> tuple[StandardTableau, StandardTableau]:
    """Restrict to nu and to the complement, relabelling the skew part from 1."""
    k = sum(nu)
    inner_positions = t.positions[:k]
    if any(not contains_box(nu, r, c) for r, c in inner_positions):
        raise ValueError(f"labels 1..{k} do not fill {nu}")
    t_nu = StandardTableau(SkewShape(nu), inner_positions)
    t_skew = StandardTableau(SkewShape(t.shape.outer, nu), t.positions[k:])
    return t_nu, t_skew


def join_tableau(t_nu: StandardTableau, t_skew: StandardTableau) -> StandardTableau:
    """Reassemble a tableau of the outer shape from the two restrictions."""
    if t_skew.shape.inner != t_nu.shape.outer:
        raise ValueError("shapes do not match")
    return StandardTableau(
        SkewShape(t_skew.shape.outer, t_nu.shape.inner),
        t_nu.positions + t_skew.positions,
    )


def hook_length(lam: Partition, row: int, col: int) -> int:
    """Hook length of the 1-based box (row, col)."""
    return (lam[row - 1] - col) + (transpose(lam)[col - 1] - row) + 1


@lru_cache(maxsize=None)
def dim_irrep(lam: Partition) -> int:
    """Number of standard tableaux of lam, by the hook-length product."""
    lam = check_partition(lam)
    n = sum(lam)
    product = 1
    for i, row_len in enumerate(lam, start=1):
        for j in range(1, row_len + 1):
            product *= hook_length(lam, i, j)
    return factorial(n) // product
