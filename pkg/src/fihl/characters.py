"""Characters of symmetric groups and their products.

Irreducible character values come from the border-strip (Murnaghan-
Nakayama) recursion, memoized globally; the memo is the only shared
mutable state in the library and is guarded by a lock.  Class functions
are value maps on cycle types (or pairs of cycle types); the full product
character table is never materialized.

Characters of subrepresentations (images and kernels of equivariant maps)
are read off reduced bases: with the basis in reduced echelon form the
matrix of a group element on the subspace is a coordinate gather, so its
trace costs O(rank) per conjugacy class.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations as iter_permutations
from math import factorial

import numpy as np

from .errors import InternalCheckError
from .linalg import SparseMatrix, colspace_basis, kernel_basis, modp_colspace, modp_kernel, prime_stream
from .partitions import Partition, format_partition, partitions_of, transpose
from .permutations import Perm, coxeter_generators, from_cycle_type, identity
from .tableaux import hook_length

_mn_cache: dict[tuple[Partition, Partition], int] = {}
_mn_lock = threading.Lock()

MAX_PERM_CHAR_B = 7  # direct fixed-point counting stays at desk scale


def class_data(n: int) -> list[tuple[Partition, int]]:
    """Cycle types of Sym(n) with class sizes n!/z."""
    out = []
    for ct in partitions_of(n):
        z = 1
        mult: dict[int, int] = {}
        for part in ct:
            mult[part] = mult.get(part, 0) + 1
        for k, m in mult.items():
            z *= k**m * factorial(m)
        out.append((ct, factorial(n) // z))
    return out


def pair_class_data(b: int, a: int) -> list[tuple[tuple[Partition, Partition], int]]:
    return [
        ((ctb, cta), sb * sa)
        for ctb, sb in class_data(b)
        for cta, sa in class_data(a)
    ]


def _border_strip_removals(lam: Partition, k: int):
    """(smaller partition, strip height) for each border strip of size k."""
    ell = len(lam)
    beta = [lam[i] + (ell - 1 - i) for i in range(ell)]
    beta_set = set(beta)
    for idx, b in enumerate(beta):
        target = b - k
        if target < 0 or target in beta_set:
            continue
        height = sum(1 for c in beta if target < c < b)
        new_beta = sorted((c for c in beta if c != b), reverse=True)
        new_beta.insert(0, target)
        new_beta.sort(reverse=True)
        parts = tuple(v - (ell - 1 - i) for i, v in enumerate(new_beta))
        parts = tuple(x for x in parts if x > 0)
        yield parts, height


def mn_char(lam: Partition, ct: Partition) -> int:
    """Irreducible character value chi^lam on the class of cycle type ct."""
    if sum(lam) != sum(ct):
        raise ValueError(f"|{lam}| != |{ct}|")
    key = (tuple(lam), tuple(ct))
    cached = _mn_cache.get(key)
    if cached is not None:
        return cached
    if not lam:
        value = 1
    else:
        value = 0
        k = ct[0]
        for smaller, height in _border_strip_removals(lam, k):
            value += (-1) ** height * mn_char(smaller, ct[1:])
    with _mn_lock:
        _mn_cache[key] = value
    return value


@lru_cache(maxsize=None)
def character_table(n: int) -> dict[Partition, dict[Partition, int]]:
    cts = partitions_of(n)
    return {lam: {ct: mn_char(lam, ct) for ct in cts} for lam in cts}


@dataclass(frozen=True)
class ClassFunction:
    """Rational class function on Sym(n) or Sym(b) x Sym(a).

    group is ("sym", n) or ("pair", b, a); values maps class labels
    (cycle types, or pairs of cycle types) to rationals.
    """

    group: tuple
    values: dict

    def value(self, key) -> Fraction:
        return Fraction(self.values.get(key, 0))

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        if self.group != other.group:
            raise ValueError("group mismatch")
        keys = set(self.values) | set(other.values)
        return ClassFunction(self.group, {k: self.value(k) + other.value(k) for k in keys})

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        if self.group != other.group:
            raise ValueError("group mismatch")
        keys = set(self.values) | set(other.values)
        return ClassFunction(self.group, {k: self.value(k) - other.value(k) for k in keys})

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassFunction) or self.group != other.group:
            return NotImplemented
        keys = set(self.values) | set(other.values)
        return all(self.value(k) == other.value(k) for k in keys)


def zero_class_function(group: tuple) -> ClassFunction:
    return ClassFunction(group, {})


def _partition_sort_key(p: Partition):
    # reverse-lexicographic enumeration order: (n) first, (1,..,1) last
    return tuple(-x for x in p)


class DecompositionTable:
    """Multiset of ((lambda, mu), multiplicity) pairs, canonically ordered."""

    def __init__(self, mults: dict[tuple[Partition, Partition], int]):
        for pair, m in mults.items():
            if m < 0 or int(m) != m:
                raise InternalCheckError(f"bad multiplicity {m} at {pair}")
        self._mults = {pair: int(m) for pair, m in mults.items() if m}

    def items(self) -> list[tuple[tuple[Partition, Partition], int]]:
        return sorted(
            self._mults.items(),
            key=lambda kv: (_partition_sort_key(kv[0][0]), _partition_sort_key(kv[0][1])),
        )

    def get(self, pair) -> int:
        return self._mults.get(pair, 0)

    def pairs(self) -> set[tuple[Partition, Partition]]:
        return set(self._mults)

    def __len__(self) -> int:
        return len(self._mults)

    def __bool__(self) -> bool:
        return bool(self._mults)

    def __eq__(self, other) -> bool:
        return isinstance(other, DecompositionTable) and self._mults == other._mults

    def __repr__(self) -> str:
        body = ", ".join(f"({format_partition(l)};{format_partition(m)}):{c}" for (l, m), c in self.items())
        return f"DecompositionTable({body})"

    def contains(self, other: "DecompositionTable") -> bool:
        """Pointwise: every multiplicity of other is <= ours."""
        return all(self.get(pair) >= m for pair, m in other._mults.items())

    def total_dimension(self) -> int:
        from .tableaux import dim_irrep

        return sum(m * dim_irrep(l) * dim_irrep(mu) for (l, mu), m in self._mults.items())

    def to_json_obj(self) -> list[dict]:
        return [
            {"lambda": format_partition(l), "mu": format_partition(m), "mult": c}
            for (l, m), c in self.items()
        ]

    def to_csv_rows(self) -> list[list]:
        return [[format_partition(l), format_partition(m), c] for (l, m), c in self.items()]


def decompose(phi: ClassFunction):
    """Isotypic multiplicities of a genuine character.

    Product-group characters yield a DecompositionTable keyed by pairs;
    Sym(n) characters yield a plain dict keyed by partitions.  Any
    negative or non-integral inner product aborts: such a value means the
    input was not a character, which is always a bug upstream.
    """
    if phi.group[0] == "sym":
        n = phi.group[1]
        table = character_table(n)
        order = factorial(n)
        out: dict[Partition, int] = {}
        for lam in partitions_of(n):
            total = Fraction(0)
            for ct, size in class_data(n):
                v = phi.value(ct)
                if v:
                    total += size * v * table[lam][ct]
            mult = total / order
            if mult.denominator != 1 or mult < 0:
                raise InternalCheckError(f"multiplicity of {lam} is {mult}; input is not a character")
            if mult:
                out[lam] = int(mult)
        return out

    _, b, a = phi.group
    table_b = character_table(b)
    table_a = character_table(a)
    order = factorial(b) * factorial(a)
    classes = pair_class_data(b, a)
    nonzero = [(key, size, phi.value(key)) for key, size in classes if phi.value(key)]
    mults: dict[tuple[Partition, Partition], int] = {}
    for lam in partitions_of(b):
        row_b = table_b[lam]
        for mu in partitions_of(a):
            row_a = table_a[mu]
            total = Fraction(0)
            for (ctb, cta), size, v in nonzero:
                total += size * v * row_b[ctb] * row_a[cta]
            mult = total / order
            if mult.denominator != 1 or mult < 0:
                raise InternalCheckError(
                    f"multiplicity of {(lam, mu)} is {mult}; input is not a character"
                )
            if mult:
                mults[(lam, mu)] = int(mult)
    return DecompositionTable(mults)


def perm_char_hom(a: int, b: int) -> ClassFunction:
    """Permutation character of the injections a -> b under Sym(b) x Sym(a).

    Counts fixed injections f with g o f o h = f by direct enumeration at
    class representatives; refuses b beyond desk scale rather than
    approximating.
    """
    group = ("pair", b, a)
    if a > b:
        return zero_class_function(group)
    if b > MAX_PERM_CHAR_B:
        raise ValueError(f"b={b} exceeds the fixed-point enumeration bound {MAX_PERM_CHAR_B}")
    injections = list(iter_permutations(range(b), a))
    values = {}
    for ctb, _ in class_data(b):
        g = from_cycle_type(ctb + (1,) * (b - sum(ctb))) if sum(ctb) < b else from_cycle_type(ctb)
        for cta, _ in class_data(a):
            h = from_cycle_type(cta)
            count = sum(
                1
                for f in injections
                if all(g[f[h[i]]] == f[i] for i in range(a))
            )
            values[(ctb, cta)] = count
    return ClassFunction(group, values)


@dataclass(frozen=True)
class MonomialAction:
    """A signed permutation action on an ordered basis.

    apply_fn(element) returns (perm, signs) meaning element . e_i =
    signs[i] * e_perm[i].  Elements are permutation tuples for ("sym", n)
    groups and (g, h) pairs for ("pair", b, a).
    """

    group: tuple
    basis: tuple
    apply_fn: object

    @property
    def dim(self) -> int:
        return len(self.basis)

    def perm_signs(self, element) -> tuple[np.ndarray, np.ndarray]:
        perm, signs = self.apply_fn(element)
        return np.asarray(perm, dtype=np.int64), np.asarray(signs, dtype=np.int64)

    def matrix(self, element) -> SparseMatrix:
        perm, signs = self.perm_signs(element)
        return SparseMatrix(
            self.dim, self.dim, {(int(perm[i]), i): int(signs[i]) for i in range(self.dim)}
        )

    def trace(self, element) -> int:
        perm, signs = self.perm_signs(element)
        fixed = perm == np.arange(self.dim, dtype=np.int64)
        return int(signs[fixed].sum())

    def group_generators(self) -> list:
        if self.group[0] == "sym":
            return coxeter_generators(self.group[1])
        _, b, a = self.group
        gens = [(g, identity(a)) for g in coxeter_generators(b)]
        gens += [(identity(b), h) for h in coxeter_generators(a)]
        return gens

    def _compose(self, first, second):
        """perm/sign data of (second after first)."""
        p1, s1 = first
        p2, s2 = second
        return p2[p1], s1 * s2[p1]

    def verify_generators(self) -> None:
        """Spot-check the homomorphism property on Coxeter generators.

        Checks the involution relation for every generator and the braid
        relation for adjacent ones within each factor.
        """
        gens = self.group_generators()
        idx = np.arange(self.dim, dtype=np.int64)
        ones = np.ones(self.dim, dtype=np.int64)
        data = [self.perm_signs(g) for g in gens]
        for perm, signs in data:
            p, s = self._compose((perm, signs), (perm, signs))
            if not (np.array_equal(p, idx) and np.array_equal(s, ones)):
                raise InternalCheckError("generator squared is not the identity")
        if self.group[0] == "sym":
            blocks = [list(range(len(gens)))]
        else:
            nb = self.group[1] - 1
            blocks = [list(range(nb)), list(range(nb, len(gens)))]
        for block in blocks:
            for k in range(len(block) - 1):
                x = data[block[k]]
                y = data[block[k + 1]]
                lhs = self._compose(self._compose(x, y), x)
                rhs = self._compose(self._compose(y, x), y)
                if not (np.array_equal(lhs[0], rhs[0]) and np.array_equal(lhs[1], rhs[1])):
                    raise InternalCheckError("braid relation fails on adjacent generators")


def class_reps(group: tuple) -> list[tuple]:
    """(class label, class size, representative element) for the group."""
    if group[0] == "sym":
        n = group[1]
        return [(ct, size, from_cycle_type(ct)) for ct, size in class_data(n)]
    _, b, a = group
    return [
        ((ctb, cta), size, (from_cycle_type(ctb), from_cycle_type(cta)))
        for (ctb, cta), size in pair_class_data(b, a)
    ]


def action_character(action: MonomialAction) -> ClassFunction:
    """Trace of the monomial action at one representative per class."""
    values = {key: action.trace(rep) for key, _, rep in class_reps(action.group)}
    return ClassFunction(action.group, values)


def check_intertwines(d: SparseMatrix, source: MonomialAction, target: MonomialAction) -> None:
    """Verify target(g) . d == d . source(g) on all Coxeter generators."""
    if source.group != target.group:
        raise ValueError("source and target actions live over different groups")
    if d.rows != target.dim or d.cols != source.dim:
        raise ValueError("matrix shape does not match the actions")
    for g in source.group_generators():
        pt, st = target.perm_signs(g)
        ps, ss = source.perm_signs(g)
        left = {(int(pt[i]), j): int(st[i]) * v for (i, j), v in d.entries.items()}
        right = {(i, int(ps[j])): int(ss[j]) * v for (i, j), v in d.entries.items()}
        if left != right:
            raise InternalCheckError("map does not intertwine the two actions")


def _subspace_trace(basis_rows, lead_indices, perm_inv, signs, modulus=None):
    """Trace of a monomial element on span(basis) in reduced form.

    basis_rows[q] is row q of the basis matrix B (shape dim x rank) with
    B[lead_indices] = I; the element maps e_q to signs[q] e_perm[q].
    """
    total = 0
    for i, lead in enumerate(lead_indices):
        q = int(perm_inv[lead])
        row = basis_rows[q]
        total += int(signs[q]) * row[i] if modulus is None else int(signs[q]) * int(row[i])
    return total % modulus if modulus is not None else total


def image_char(
    d: SparseMatrix,
    source: MonomialAction,
    target: MonomialAction,
    mode: str = "exact",
    check: bool = True,
) -> ClassFunction:
    """Character of the image of the equivariant map d.

    Picks a reduced column-space basis B (identity pattern on its leading
    rows) so that solving g.B = B.X is a coordinate gather; returns the
    trace of X per class.  Modular mode certifies the integer traces by
    agreement over two primes, escalating on disagreement.
    """
    if check:
        check_intertwines(d, source, target)
    group = target.group
    reps = class_reps(group)
    if d.is_zero():
        return zero_class_function(group)
    if mode == "exact":
        _, basis = colspace_basis(d)
        leads = [next(i for i, v in enumerate(vec) if v) for vec in basis]
        rows = [[vec[q] for vec in basis] for q in range(d.rows)]
        values = {}
        for key, _, rep in reps:
            perm, signs = target.perm_signs(rep)
            tr = Fraction(0)
            perm_inv = np.argsort(perm)
            for i, lead in enumerate(leads):
                q = int(perm_inv[lead])
                tr += int(signs[q]) * rows[q][i]
            if tr.denominator != 1:
                raise InternalCheckError("non-integral subrepresentation trace")
            values[key] = int(tr)
        return ClassFunction(group, values)
    if mode != "modular":
        raise ValueError(f"unknown mode {mode!r}")

    arr = d.to_int_array()
    rep_data = [(key, target.perm_signs(rep)) for key, _, rep in reps]
    seen = []
    primes = prime_stream()
    for _ in range(5):
        p = next(primes)
        rank, leads, basis = modp_colspace(arr, p)
        values = {}
        for key, (perm, signs) in rep_data:
            perm_inv = np.argsort(perm)
            tr = _subspace_trace(basis, leads, perm_inv, signs, modulus=p)
            values[key] = tr - p if tr > p // 2 else tr
        fingerprint = (rank, tuple(sorted(values.items())))
        if fingerprint in seen:
            return ClassFunction(group, values)
        seen.append(fingerprint)
    raise InternalCheckError("modular image characters never agreed across primes")


def kernel_char(
    d: SparseMatrix,
    source: MonomialAction,
    mode: str = "exact",
) -> ClassFunction:
    """Character of the kernel of d under the source action."""
    group = source.group
    reps = class_reps(group)
    if d.is_zero():
        return action_character(source)
    if mode == "exact":
        basis = kernel_basis(d)
        leads = []
        seen_rows = set()
        for vec in basis:
            lead = next(i for i, v in enumerate(vec) if v and i not in seen_rows and vec[i] == 1)
            leads.append(lead)
            seen_rows.add(lead)
        rows = [[vec[q] for vec in basis] for q in range(d.cols)]
        values = {}
        for key, _, rep in reps:
            perm, signs = source.perm_signs(rep)
            perm_inv = np.argsort(perm)
            tr = Fraction(0)
            for i, lead in enumerate(leads):
                q = int(perm_inv[lead])
                tr += int(signs[q]) * rows[q][i]
            if tr.denominator != 1:
                raise InternalCheckError("non-integral subrepresentation trace")
            values[key] = int(tr)
        return ClassFunction(group, values)
    if mode != "modular":
        raise ValueError(f"unknown mode {mode!r}")

    arr = d.to_int_array()
    rep_data = [(key, source.perm_signs(rep)) for key, _, rep in reps]
    seen = []
    primes = prime_stream()
    for _ in range(5):
        p = next(primes)
        rank, _, free, k = modp_kernel(arr, p)
        values = {}
        for key, (perm, signs) in rep_data:
            perm_inv = np.argsort(perm)
            tr = _subspace_trace(k, free, perm_inv, signs, modulus=p)
            values[key] = tr - p if tr > p // 2 else tr
        fingerprint = (rank, tuple(sorted(values.items())))
        if fingerprint in seen:
            return ClassFunction(group, values)
        seen.append(fingerprint)
    raise InternalCheckError("modular kernel characters never agreed across primes")


def schur_poly_dim(lam: Partition, n: int) -> int:
    """Dimension of the Schur functor of shape lam on an n-dim space.

    Hook-content formula: product over boxes of (n + col - row)/hook.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    value = Fraction(1)
    for i, row_len in enumerate(lam, start=1):
        for j in range(1, row_len + 1):
            value *= Fraction(n + j - i, hook_length(lam, i, j))
    if value.denominator != 1:
        raise InternalCheckError("hook-content product is not integral")
    return int(value)
