"""The overlap coefficient of the symmetrized invariant vector.

Context: a chain of partitions kappa < nu < lam (one box at a time at the
bottom, horizontal-strip condition at the top) with the first row of lam
longer than its strip complement.  The seed tableau labels the nu/kappa
box 1 and fills lam/nu left to right; the coefficient is the overlap of
the symmetrized invariant with that seed basis vector.

Two independent routes are implemented: an exact rational closed formula
(never touching a square root) driven by admissible sign sequences, and a
double-precision oracle built from the orthogonal representation of the
skew shape.  The inductive one-box reduction identity ties contexts of
neighbouring sizes together exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt
from typing import Iterator

import numpy as np

from .errors import InternalCheckError
from .partitions import Partition, check_partition, contains_box, drop_first_row, leq, partitions_of
from .tableaux import (
    SkewShape,
    StandardTableau,
    axial,
    coxeter_apply,
    split_tableau,
    standard_tableaux,
    t_rev,
)


@dataclass(frozen=True)
class ThetaContext:
    """A partition chain kappa < nu < lam satisfying the strip hypothesis."""

    lam: Partition
    nu: Partition
    kappa: Partition

    def __post_init__(self):
        object.__setattr__(self, "lam", check_partition(self.lam))
        object.__setattr__(self, "nu", check_partition(self.nu))
        object.__setattr__(self, "kappa", check_partition(self.kappa))
        b, a = sum(self.lam), sum(self.nu)
        if a < 1 or sum(self.kappa) != a - 1:
            raise ValueError("kappa must have exactly one box fewer than nu")
        hs = drop_first_row(self.lam)
        if not (leq(hs, self.kappa) and leq(self.kappa, self.nu) and leq(self.nu, self.lam)):
            raise ValueError("chain hs(lam) <= kappa <= nu <= lam fails")
        if not self.lam or self.lam[0] <= b - a:
            raise ValueError("first row of lam must exceed b-a")

    @property
    def b(self) -> int:
        return sum(self.lam)

    @property
    def a(self) -> int:
        return sum(self.nu)

    @property
    def gap(self) -> int:
        return self.b - self.a


def tspec(ctx: ThetaContext) -> StandardTableau:
    """Seed tableau: nu/kappa box labelled 1, lam/nu filled left to right."""
    shape = SkewShape(ctx.lam, ctx.kappa)
    nu_box = next(iter(set(SkewShape(ctx.nu, ctx.kappa).boxes)))
    strip = t_rev(SkewShape(ctx.lam, ctx.nu))
    return StandardTableau(shape, (nu_box,) + strip.positions)


@dataclass(frozen=True)
class BracketElement:
    """One admissible sign sequence applied to the seed tableau.

    epsilons[j-2] is the bit for generator j (j = 2..gap); r_values[j-1]
    is the axial distance from j+1 to j measured before generator j acts.
    """

    tableau: StandardTableau
    epsilons: tuple[int, ...]
    r_values: tuple[int, ...]

    def eps(self, j: int) -> int:
        return 0 if j == 1 else self.epsilons[j - 2]

    def r(self, j: int) -> int:
        return self.r_values[j - 1]

    @property
    def j_floor(self) -> int:
        """Largest index carrying a set bit; 1 when none is set."""
        top = max((j for j in range(2, len(self.epsilons) + 2) if self.eps(j)), default=1)
        return top


def bracket_set(ctx: ThetaContext) -> list[BracketElement]:
    """All admissible sign sequences, seed first.

    A bit may be set for generator j only when j and j+1 are not in the
    same row of the partially transformed tableau; on a horizontal strip
    that is exactly the condition for the swap to stay standard.
    """
    seed = tspec(ctx)
    m = ctx.gap
    if m == 0:
        return [BracketElement(seed, (), ())]

    out: list[BracketElement] = []

    def descend(j: int, current: StandardTableau, eps_rev: tuple[int, ...], r_rev: tuple[int, ...]):
        if j == 1:
            r1 = axial(current, 2, 1)
            out.append(
                BracketElement(current, tuple(reversed(eps_rev)), (r1,) + tuple(reversed(r_rev)))
            )
            return
        r_j = axial(current, j + 1, j)
        descend(j - 1, current, eps_rev + (0,), r_rev + (r_j,))
        if r_j != 1:
            flipped = coxeter_apply(current, j)
            if flipped is None:
                raise InternalCheckError("swap blocked off the same-row case on a horizontal strip")
            descend(j - 1, flipped, eps_rev + (1,), r_rev + (r_j,))

    descend(m, seed, (), ())
    out.sort(key=lambda e: e.epsilons)
    return out


def _term(elem: BracketElement, m: int) -> Fraction:
    is_seed = all(e == 0 for e in elem.epsilons)
    total = Fraction(1) if is_seed else Fraction(0)
    for k in range(elem.j_floor, m + 1):
        product = Fraction(1)
        for j in range(1, k + 1):
            r = elem.r(j)
            if r == 0:
                raise InternalCheckError("zero axial distance in the closed formula")
            product *= Fraction(r - 1, r) if elem.eps(j) else Fraction(1, r)
        total += product
    return total


def theta_exact(ctx: ThetaContext) -> Fraction:
    """Exact rational coefficient via the closed formula; always positive."""
    m = ctx.gap
    value = sum((_term(elem, m) for elem in bracket_set(ctx)), Fraction(0))
    if value <= 0:
        raise InternalCheckError(f"nonpositive coefficient {value} at {ctx}")
    return value


def plus_reduction(ctx: ThetaContext) -> tuple[ThetaContext, Fraction]:
    """One-box reduction: move the leftmost strip box into nu and kappa.

    Defined when lam/nu has at least two boxes and the seed tableau is not
    the left-to-right filling; the returned factor satisfies
    theta(ctx) = factor * theta(reduced ctx) exactly.
    """
    if ctx.gap < 2:
        raise ValueError("needs at least two boxes in lam/nu")
    seed = tspec(ctx)
    strip_boxes = SkewShape(ctx.lam, ctx.kappa).boxes
    leftmost = min(strip_boxes, key=lambda box: box[1])
    if seed.box_of(1) == leftmost:
        raise ValueError("seed tableau is already the left-to-right filling")
    if seed.box_of(2) != leftmost:
        raise InternalCheckError("leftmost strip box is not labelled 2 in the seed")
    row = leftmost[0]
    kp = list(ctx.kappa) + [0] * (row - len(ctx.kappa))
    kp[row - 1] += 1
    npl = list(ctx.nu) + [0] * (row - len(ctx.nu))
    npl[row - 1] += 1
    reduced = ThetaContext(ctx.lam, check_partition(npl), check_partition(kp))
    factor = 1 + Fraction(1, axial(seed, 2, 1))
    return reduced, factor


def _yof_matrices(tabs: list[StandardTableau]) -> list[np.ndarray]:
    """Orthogonal-form generator matrices on the span of the given tableaux.

    Column T of matrix j holds 1/r on the diagonal and sqrt(1 - 1/r^2) at
    the swapped tableau when the swap is standard.
    """
    if not tabs:
        return []
    dim = len(tabs)
    m = tabs[0].size
    index = {t: i for i, t in enumerate(tabs)}
    matrices = []
    for j in range(1, m):
        mat = np.zeros((dim, dim))
        for i, t in enumerate(tabs):
            r = axial(t, j + 1, j)
            mat[i, i] = 1.0 / r
            swapped = coxeter_apply(t, j)
            if swapped is not None:
                mat[index[swapped], i] = sqrt(1.0 - 1.0 / r**2)
        matrices.append(mat)
    return matrices


def _beta_numeric(shape: SkewShape) -> dict[StandardTableau, float]:
    """Invariant-vector coefficients on a horizontal strip, seed value 1.

    Follows the ratio recursion beta(sT)/beta(T) = sqrt((r-1)/(r+1))
    outward from the left-to-right filling; every tableau is reached.
    """
    start = t_rev(shape)
    beta = {start: 1.0}
    stack = [start]
    while stack:
        t = stack.pop()
        for j in range(1, max(t.size, 1)):
            swapped = coxeter_apply(t, j)
            if swapped is None or swapped in beta:
                continue
            r = axial(t, j + 1, j)
            beta[swapped] = beta[t] * sqrt((r - 1.0) / (r + 1.0))
            stack.append(swapped)
    return beta


def oracle_numeric(ctx: ThetaContext, check: bool = True) -> float:
    """Double-precision coefficient via the orthogonal representation.

    Builds the invariant vector over the tableaux with the nu/kappa box
    labelled 1, symmetrizes over the transpositions moving label 1, and
    reads off the seed coordinate.  With check on, the partial and full
    invariance of the two vectors is verified to tight tolerances.
    """
    shape = SkewShape(ctx.lam, ctx.kappa)
    tabs = standard_tableaux(shape)
    index = {t: i for i, t in enumerate(tabs)}
    gens = _yof_matrices(tabs)
    beta = _beta_numeric(SkewShape(ctx.lam, ctx.nu))
    nu_box = next(iter(set(SkewShape(ctx.nu, ctx.kappa).boxes)))

    y = np.zeros(len(tabs))
    for t in tabs:
        if t.box_of(1) != nu_box:
            continue
        restriction = StandardTableau(SkewShape(ctx.lam, ctx.nu), t.positions[1:])
        y[index[t]] = beta[restriction]

    m1 = ctx.gap + 1
    total = y.copy()
    trans = None
    for i in range(2, m1 + 1):
        if i == 2:
            trans = gens[0].copy()
        else:
            trans = gens[i - 2] @ trans @ gens[i - 2]
        total += trans @ y

    if check:
        for j in range(2, m1):
            if np.max(np.abs(gens[j - 1] @ y - y)) > 1e-10:
                raise InternalCheckError("invariant vector moves under a stabilizing generator")
        for j in range(1, m1):
            if np.max(np.abs(gens[j - 1] @ total - total)) > 1e-8:
                raise InternalCheckError("symmetrized vector is not fully invariant")

    seed = tspec(ctx)
    return float(total[index[seed]])


def theta_contexts(b: int) -> Iterator[ThetaContext]:
    """All valid contexts with |lam| = b, in enumeration order."""
    for a in range(1, b + 1):
        for lam in partitions_of(b):
            if lam[0] <= b - a:
                continue
            hs = drop_first_row(lam)
            for nu in partitions_of(a):
                if not (leq(hs, nu) and leq(nu, lam)):
                    continue
                for kappa in partitions_of(a - 1):
                    if leq(hs, kappa) and leq(kappa, nu):
                        yield ThetaContext(lam, nu, kappa)


def invariant_checks(lam: Partition, nu: Partition, tol: float = 1e-9) -> dict:
    """Numeric verification of the invariant generators for (lam, nu).

    Checks the diagonal invariance of the summed tensor square, the row
    stabilizer of the left-to-right strip vector, and the invariance of
    the relative-tableau vector under both the top strip factor and the
    diagonal bottom factor.  Returns the maximal errors per check.
    """
    lam = check_partition(lam)
    nu = check_partition(nu)
    if not (leq(drop_first_row(lam), nu) and leq(nu, lam)):
        raise ValueError("nu must lie between hs(lam) and lam")
    b, a = sum(lam), sum(nu)
    report: dict[str, float] = {}

    lam_tabs = standard_tableaux(SkewShape(lam))
    lam_gens = _yof_matrices(lam_tabs)
    dim = len(lam_tabs)
    tensor = np.zeros(dim * dim)
    for i in range(dim):
        tensor[i * dim + i] = 1.0
    err = 0.0
    for g in lam_gens:
        err = max(err, float(np.max(np.abs(np.kron(g, g) @ tensor - tensor))))
    report["tensor_square_diagonal"] = err

    skew = SkewShape(lam, nu)
    skew_tabs = standard_tableaux(skew)
    skew_gens = _yof_matrices(skew_tabs)
    if skew_tabs and skew_tabs[0].size >= 2:
        rev = t_rev(skew)
        e_rev = np.zeros(len(skew_tabs))
        e_rev[skew_tabs.index(rev)] = 1.0
        err = 0.0
        for j in range(1, rev.size):
            if rev.box_of(j)[0] == rev.box_of(j + 1)[0]:
                err = max(err, float(np.max(np.abs(skew_gens[j - 1] @ e_rev - e_rev))))
        report["row_stabilizer"] = err
    else:
        report["row_stabilizer"] = 0.0

    nu_tabs = standard_tableaux(SkewShape(nu))
    nu_gens = _yof_matrices(nu_tabs)
    beta = _beta_numeric(skew)
    nu_index = {t: i for i, t in enumerate(nu_tabs)}
    lam_index = {t: i for i, t in enumerate(lam_tabs)}
    x = np.zeros(dim * len(nu_tabs))
    for t in lam_tabs:
        if not all(contains_box(nu, *t.box_of(k)) for k in range(1, a + 1)):
            continue
        t_nu, t_skew = split_tableau(t, nu)
        x[lam_index[t] * len(nu_tabs) + nu_index[t_nu]] = beta[t_skew]
    err = 0.0
    eye_nu = np.eye(len(nu_tabs))
    for j in range(a + 1, b):
        err = max(err, float(np.max(np.abs(np.kron(lam_gens[j - 1], eye_nu) @ x - x))))
    for j in range(1, a):
        big = np.kron(lam_gens[j - 1], nu_gens[j - 1])
        err = max(err, float(np.max(np.abs(big @ x - x))))
    report["relative_vector"] = err

    beta_rev = beta[t_rev(skew)] if skew.size else 1.0
    report["seed_coefficient"] = abs(beta_rev - 1.0)
    report["ok"] = all(v <= tol for v in report.values())
    return report
