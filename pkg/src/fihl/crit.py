"""Strip-compatible middle partitions, critical pairs, and predictions.

For a pair (lam, mu) the middle set collects the nu making lam/nu a
horizontal strip and mu/nu a vertical strip; it is always an interval
under containment whose size is a power of two.  Pairs with a singleton
middle set are critical: they contribute exactly one simple summand to
the whole chain complex, which yields the predicted homology tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .characters import DecompositionTable
from .errors import InternalCheckError
from .partitions import (
    Partition,
    check_partition,
    contains_box,
    drop_first_column,
    drop_first_row,
    leq,
    meet_join,
    outer_corners,
    partitions_of,
    remove_boxes,
    subpartitions,
    transpose,
)


def _in_middle(nu: Partition, lam: Partition, mu: Partition) -> bool:
    return (
        leq(drop_first_row(lam), nu)
        and leq(nu, lam)
        and leq(drop_first_column(mu), nu)
        and leq(nu, mu)
    )


@dataclass(frozen=True)
class MSet:
    """Middle partitions for (lam, mu): the interval [floor, lam meet mu]."""

    lam: Partition
    mu: Partition
    members: tuple[Partition, ...]

    @property
    def floor(self) -> Partition | None:
        return min(self.members, key=sum) if self.members else None

    def is_critical(self) -> bool:
        meet, _ = meet_join(self.lam, self.mu)
        return self.members == (meet,)


def _removable_corners(lam: Partition, mu: Partition) -> list[tuple[int, int]]:
    """Outer corners of the meet passing the two-box removal test.

    A corner can leave the middle set exactly when the box to its right is
    not in mu/meet and the box below is not in lam/meet.
    """
    meet, _ = meet_join(lam, mu)
    out = []
    for row, col in outer_corners(meet):
        right_in_mu = contains_box(mu, row, col + 1)
        below_in_lam = contains_box(lam, row + 1, col)
        if not right_in_mu and not below_in_lam:
            out.append((row, col))
    return out


def m_set(lam: Partition, mu: Partition, method: str = "interval") -> MSet:
    """Compute the middle set; 'both' cross-checks brute force vs interval."""
    lam = check_partition(lam)
    mu = check_partition(mu)
    if method not in ("brute", "interval", "both"):
        raise ValueError(f"unknown method {method!r}")
    meet, _ = meet_join(lam, mu)

    brute = None
    if method in ("brute", "both"):
        brute = tuple(sorted((nu for nu in subpartitions(meet) if _in_middle(nu, lam, mu)), key=lambda p: (sum(p), p)))
    interval = None
    if method in ("interval", "both"):
        if not _in_middle(meet, lam, mu):
            interval = ()
        else:
            corners = _removable_corners(lam, mu)
            members = []
            for k in range(len(corners) + 1):
                for subset in combinations(corners, k):
                    members.append(remove_boxes(meet, subset))
            interval = tuple(sorted(set(members), key=lambda p: (sum(p), p)))
    if method == "both" and brute != interval:
        raise InternalCheckError(f"middle-set methods disagree at ({lam}, {mu})")
    members = interval if interval is not None else brute
    return MSet(lam, mu, members)


@dataclass(frozen=True)
class CritPair:
    """A pair whose middle set is the singleton {lam meet mu}."""

    lam: Partition
    mu: Partition

    @property
    def degree(self) -> int:
        meet, _ = meet_join(self.lam, self.mu)
        return sum(self.mu) - sum(meet)


def crit_set(a: int, b: int) -> list[CritPair]:
    """All critical pairs (lam of b, mu of a), enumeration order."""
    out = []
    for lam in partitions_of(b):
        for mu in partitions_of(a):
            if m_set(lam, mu).is_critical():
                out.append(CritPair(lam, mu))
    return out


def encode_gamma_delta(gamma: Partition, delta: Partition) -> CritPair:
    """Build the critical pair from a row/column seed pair.

    Requires the meet condition relating the seed diagrams; the output is
    verified critical rather than trusted.
    """
    gamma = check_partition(gamma)
    delta = check_partition(delta)
    hs_gamma = drop_first_row(gamma)
    vs_delta = drop_first_column(delta)
    cond_meet = meet_join(hs_gamma, vs_delta)[0] == meet_join(gamma, delta)[0]
    if not cond_meet:
        raise ValueError(f"seed pair ({gamma}, {delta}) fails the meet condition")
    lam = meet_join(gamma, vs_delta)[1]
    mu = meet_join(hs_gamma, delta)[1]
    pair = CritPair(lam, mu)
    if not m_set(lam, mu).is_critical():
        raise InternalCheckError(f"encoded pair ({lam}, {mu}) is not critical")
    return pair


def decode_gamma_delta(pair: CritPair) -> tuple[Partition, Partition]:
    """Recover the seed pair: delta spans the rows of mu touching mu/meet,
    gamma the columns of lam touching lam/meet."""
    if not m_set(pair.lam, pair.mu).is_critical():
        raise ValueError(f"({pair.lam}, {pair.mu}) is not critical")
    meet, _ = meet_join(pair.lam, pair.mu)
    meet_padded_mu = meet + (0,) * (len(pair.mu) - len(meet))
    rows = [i + 1 for i, (m, w) in enumerate(zip(pair.mu, meet_padded_mu)) if m > w]
    s = max(rows, default=0)
    delta = check_partition(pair.mu[:s])
    lam_t = transpose(pair.lam)
    meet_t = transpose(meet)
    meet_padded_lam = meet_t + (0,) * (len(lam_t) - len(meet_t))
    cols = [j + 1 for j, (l, w) in enumerate(zip(lam_t, meet_padded_lam)) if l > w]
    t = max(cols, default=0)
    gamma = transpose(check_partition(lam_t[:t]))
    return gamma, delta


def dagger_dual(pair: CritPair) -> CritPair:
    """Transpose duality: (lam, mu) to (mu^t, lam^t), swapping bidegrees."""
    dual = CritPair(transpose(pair.mu), transpose(pair.lam))
    if not m_set(dual.lam, dual.mu).is_critical():
        raise InternalCheckError(f"dual of ({pair.lam}, {pair.mu}) is not critical")
    return dual


def homology_prediction(a: int, b: int):
    """Predicted per-degree tables: each critical pair once, in its degree."""
    by_degree: dict[int, dict] = {}
    for pair in crit_set(a, b):
        by_degree.setdefault(pair.degree, {})[(pair.lam, pair.mu)] = 1
    return {n: DecompositionTable(mults) for n, mults in sorted(by_degree.items())}


@dataclass(frozen=True)
class ConjectureReport:
    """Comparison of predicted vs computed homology for one bidegree.

    Status per degree is 'match' or 'strict-inclusion'; a failure of the
    proven inclusion direction is recorded as 'VIOLATION' and treated as
    an error by the test suite, while strict inclusions are legitimate
    evidence, not failures.
    """

    a: int
    b: int
    status: dict[int, str]
    predicted: dict
    computed: dict

    @property
    def overall(self) -> str:
        if any(s == "VIOLATION" for s in self.status.values()):
            return "VIOLATION"
        if any(s == "strict-inclusion" for s in self.status.values()):
            return "strict-inclusion"
        return "match"


def conjecture_report(a: int, b: int, mode: str = "exact", computed=None) -> ConjectureReport:
    """Compare the critical-pair prediction against computed homology."""
    from .koszul import homology_decomposition

    if computed is None:
        computed = homology_decomposition(a, b, mode=mode)
    predicted = homology_prediction(a, b)
    empty = DecompositionTable({})
    status = {}
    for n in sorted(set(predicted) | set(computed)):
        want = predicted.get(n, empty)
        got = computed.get(n, empty)
        if not got.contains(want):
            status[n] = "VIOLATION"
        elif got == want:
            status[n] = "match"
        else:
            status[n] = "strict-inclusion"
    return ConjectureReport(a, b, status, predicted, computed)
