"""The injective hom module at matrix level: bases, transfer map, cokernel.

Everything is 0-based internally: an injection a -> b is a tuple of
distinct values in range(b), listed in lexicographic order so the
canonical inclusion (0, 1, ..., a-1) always comes first.  All actions are
left actions of Sym(b) x Sym(a); right actions are converted through the
inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as iter_permutations
from math import factorial

import numpy as np

from .characters import (
    ClassFunction,
    DecompositionTable,
    MonomialAction,
    action_character,
    decompose,
    image_char,
)
from .errors import InternalCheckError
from .linalg import SparseMatrix, rank
from .partitions import Partition, drop_first_row, partitions_of
from .permutations import Perm, compose, coxeter_generators, identity, inverse, transposition

Injection = tuple[int, ...]


@lru_cache(maxsize=None)
def hom_basis(a: int, b: int) -> tuple[Injection, ...]:
    """All injections a -> b, lexicographic; empty when a > b."""
    if a > b:
        return ()
    return tuple(iter_permutations(range(b), a))


def hom_action(a: int, b: int) -> MonomialAction:
    """Left Sym(b) x Sym(a) action on injections: f maps to g o f o h^-1."""
    basis = hom_basis(a, b)
    index = {f: i for i, f in enumerate(basis)}
    dim = len(basis)

    def apply_fn(element):
        g, h = element
        hinv = inverse(h)
        perm = np.empty(dim, dtype=np.int64)
        for i, f in enumerate(basis):
            perm[i] = index[tuple(g[f[hinv[x]]] for x in range(a))]
        return perm, np.ones(dim, dtype=np.int64)

    return MonomialAction(("pair", b, a), basis, apply_fn)


def _coset_reps(a: int) -> list[Perm]:
    """tau_i swaps i with the last letter; tau_{a-1} is the identity."""
    return [transposition(a, i, a - 1) for i in range(a)]


@dataclass(frozen=True)
class TransferMatrix:
    """The transfer map from the induced module into the hom module.

    Source basis pairs (i, f) run over coset index i and injections
    f: a-1 -> b; all entries are 0/1 and every column has b-a+1 of them.
    """

    a: int
    b: int
    matrix: SparseMatrix
    source_basis: tuple
    target_basis: tuple
    source_action: MonomialAction
    target_action: MonomialAction


def induced_action(a: int, b: int) -> tuple[tuple, MonomialAction]:
    """Left Sym(b) x Sym(a) action on the induced module basis (i, f)."""
    inner = hom_basis(a - 1, b)
    basis = tuple((i, f) for i in range(a) for f in inner)
    index = {tag: k for k, tag in enumerate(basis)}
    taus = _coset_reps(a)
    dim = len(basis)

    def apply_fn(element):
        g, h = element
        perm = np.empty(dim, dtype=np.int64)
        for k, (i, f) in enumerate(basis):
            j = h[i]
            # h . tau_i = tau_j . h' with h' fixing the last letter
            hprime = compose(taus[j], compose(h, taus[i]))
            hp_inv = inverse(hprime)
            new_f = tuple(g[f[hp_inv[x]]] for x in range(a - 1))
            perm[k] = index[(j, new_f)]
        return perm, np.ones(dim, dtype=np.int64)

    return basis, MonomialAction(("pair", b, a), basis, apply_fn)


@lru_cache(maxsize=None)
def tr_matrix(a: int, b: int) -> TransferMatrix:
    """Transfer matrix: column (i, f) is sum over one-point extensions of f,
    twisted by the coset representative tau_i; zero map when a = 0."""
    if a < 0:
        raise ValueError("a must be nonnegative")
    target_basis = hom_basis(a, b)
    target_action = hom_action(a, b)
    tindex = {f: i for i, f in enumerate(target_basis)}
    if a == 0:
        mat = SparseMatrix.zero(len(target_basis), 0)
        source_action = MonomialAction(("pair", b, a), (), lambda e: (np.empty(0, np.int64),) * 2)
        return TransferMatrix(a, b, mat, (), target_basis, source_action, target_action)

    source_basis, source_action = induced_action(a, b)
    taus = _coset_reps(a)
    columns = []
    for i, f in source_basis:
        tau = taus[i]
        used = set(f)
        col: dict[int, int] = {}
        for t in range(b):
            if t in used:
                continue
            ext = f + (t,)
            composed = tuple(ext[tau[x]] for x in range(a))
            col[tindex[composed]] = 1
        columns.append(col)
    if any(len(col) != b - a + 1 for col in columns):
        raise InternalCheckError("transfer column support is not b-a+1")
    mat = SparseMatrix.from_columns(len(target_basis), columns)
    return TransferMatrix(a, b, mat, source_basis, target_basis, source_action, target_action)


def h0_computed(a: int, b: int, mode: str = "exact") -> DecompositionTable:
    """Decomposition of the cokernel of the transfer map at bidegree (a, b)."""
    if a > b:
        return DecompositionTable({})
    t = tr_matrix(a, b)
    target_char = action_character(t.target_action)
    if t.matrix.is_zero():
        return decompose(target_char)
    im = image_char(t.matrix, t.source_action, t.target_action, mode=mode)
    return decompose(target_char - im)


def h0_predicted(a: int, b: int) -> DecompositionTable:
    """Closed-form cokernel: pairs (lam, lam minus first row), lam_1 = b-a."""
    if a > b:
        return DecompositionTable({})
    mults = {}
    for lam in partitions_of(b):
        first = lam[0] if lam else 0
        if first == b - a:
            mults[(lam, drop_first_row(lam))] = 1
    return DecompositionTable(mults)


def _sorted_complement(a: int, x: int) -> list[int]:
    return [y for y in range(a) if y != x]


@dataclass(frozen=True)
class DevissageReport:
    """One level of the restriction short exact sequence, with its checks."""

    a: int
    b: int
    inclusion: SparseMatrix
    middle_identity: SparseMatrix
    projection: SparseMatrix
    dims: tuple[int, int, int]
    ranks: tuple[int, int]
    exact: bool


def _devissage_bases(a: int, b: int):
    left = tuple((x, f) for x in range(a) for f in hom_basis(a - 1, b - 1))
    middle = hom_basis(a, b)
    right = hom_basis(a, b - 1)
    return left, middle, right


def _devissage_maps(a: int, b: int) -> tuple[SparseMatrix, SparseMatrix]:
    left, middle, right = _devissage_bases(a, b)
    midx = {f: i for i, f in enumerate(middle)}
    ridx = {f: i for i, f in enumerate(right)}
    incl_cols = []
    for x, f in left:
        values = [0] * a
        for pos, w in enumerate(_sorted_complement(a, x)):
            values[w] = f[pos]
        values[x] = b - 1
        incl_cols.append({midx[tuple(values)]: 1})
    incl = SparseMatrix.from_columns(len(middle), incl_cols)
    proj_cols = []
    for f in middle:
        if all(v <= b - 2 for v in f):
            proj_cols.append({ridx[f]: 1})
        else:
            proj_cols.append({})
    proj = SparseMatrix.from_columns(len(right), proj_cols)
    return incl, proj


def _hom_structure_matrix(a: int, b: int) -> SparseMatrix:
    """Raw covariant structure map hom(a-1, b) -> hom(a, b): sum over
    one-point extensions at the new letter."""
    source = hom_basis(a - 1, b)
    target = hom_basis(a, b)
    tindex = {f: i for i, f in enumerate(target)}
    cols = []
    for f in source:
        used = set(f)
        cols.append({tindex[f + (t,)]: 1 for t in range(b) if t not in used})
    return SparseMatrix.from_columns(len(target), cols)


def _left_structure_matrix(a: int, b: int) -> SparseMatrix:
    """Structure map of the one-point convolution term between levels
    a-1 and a; the marked letter x is carried along."""
    source = tuple((x, f) for x in range(a - 1) for f in hom_basis(a - 2, b - 1))
    target = tuple((x, f) for x in range(a) for f in hom_basis(a - 1, b - 1))
    tindex = {tag: i for i, tag in enumerate(target)}
    cols = []
    for x, f in source:
        used = set(f)
        cols.append({tindex[(x, f + (t,))]: 1 for t in range(b - 1) if t not in used})
    return SparseMatrix.from_columns(len(target), cols)


def _left_action_matrix(a: int, b: int, g: Perm, h: Perm) -> SparseMatrix:
    """Action of (g in Sym(b-1), h in Sym(a)) on the one-point term basis."""
    left, _, _ = _devissage_bases(a, b)
    index = {tag: i for i, tag in enumerate(left)}
    hinv = inverse(h)
    cols = []
    for x, f in left:
        y = h[x]
        complement_src = _sorted_complement(a, x)
        pos_src = {w: k for k, w in enumerate(complement_src)}
        new_f = tuple(g[f[pos_src[hinv[w]]]] for w in _sorted_complement(a, y))
        cols.append({index[(y, new_f)]: 1})
    return SparseMatrix.from_columns(len(left), cols)


def _hom_action_matrix(a: int, b: int, g: Perm, h: Perm) -> SparseMatrix:
    basis = hom_basis(a, b)
    index = {f: i for i, f in enumerate(basis)}
    hinv = inverse(h)
    cols = []
    for f in basis:
        cols.append({index[tuple(g[f[hinv[x]]] for x in range(a))]: 1})
    return SparseMatrix.from_columns(len(basis), cols)


def devissage_ses(a: int, b: int, mode: str = "exact") -> DevissageReport:
    """Build and verify the restriction short exact sequence at level a.

    The one-point convolution term includes by sending the marked letter
    to the top target letter; the projection retracts onto injections
    missing that letter and kills everything else.  Exactness, the
    equivariance under Sym(b-1) and Sym(a), and naturality with respect to
    the level-raising structure maps are all verified; failure aborts.
    """
    if b < 1:
        raise ValueError("b must be at least 1")
    incl, proj = _devissage_maps(a, b)
    left, middle, right = _devissage_bases(a, b)
    dims = (len(left), len(middle), len(right))
    if not proj.matmul(incl).is_zero():
        raise InternalCheckError("projection composed with inclusion is nonzero")
    rank_incl = rank(incl, mode)
    rank_proj = rank(proj, mode)
    exact = (
        rank_incl == dims[0]
        and rank_proj == dims[2]
        and rank_incl + rank_proj == dims[1]
    )
    if not exact:
        raise InternalCheckError(f"sequence not exact at ({a}, {b}): dims {dims}, ranks {(rank_incl, rank_proj)}")

    # Sym(b-1) (embedded fixing the top letter) and Sym(a) equivariance.
    gens = [(g_small, identity(a)) for g_small in coxeter_generators(b - 1)]
    gens += [(identity(b - 1), h) for h in coxeter_generators(a)]
    for g_small, h in gens:
        g = g_small + (b - 1,)
        left_mat = _left_action_matrix(a, b, g_small, h)
        mid_mat = _hom_action_matrix(a, b, g, h)
        right_mat = _hom_action_matrix(a, b - 1, g_small, h)
        if mid_mat.matmul(incl).entries != incl.matmul(left_mat).entries:
            raise InternalCheckError("inclusion is not equivariant")
        if right_mat.matmul(proj).entries != proj.matmul(mid_mat).entries:
            raise InternalCheckError("projection is not equivariant")

    # Naturality: the square between levels a-1 and a commutes.
    if a >= 1:
        incl_prev, proj_prev = _devissage_maps(a - 1, b)
        mid_struct = _hom_structure_matrix(a, b)
        right_struct = _hom_structure_matrix(a, b - 1)
        left_struct = _left_structure_matrix(a, b)
        if mid_struct.matmul(incl_prev).entries != incl.matmul(left_struct).entries:
            raise InternalCheckError("inclusion square does not commute")
        if proj.matmul(mid_struct).entries != right_struct.matmul(proj_prev).entries:
            raise InternalCheckError("projection square does not commute")

    return DevissageReport(
        a,
        b,
        incl,
        SparseMatrix.identity(dims[1]),
        proj,
        dims,
        (rank_incl, rank_proj),
        exact,
    )
