"""Sub-amplitude enumeration over non-negative integer matrices with fixed margins.

A K matrix has row sums ``n_i`` (input) and column sums ``m_j`` (output).  Each
one contributes ``w^(sum i j k_ij) / prod k_ij!`` to the amplitude.  The module
also groups those contributions by coefficient and provides the closed-form
JKN estimate of how many K matrices exist.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import mpmath

from .cyclo import CycloPoly
from .errors import BudgetExceededError, DegenerateEstimateError
from .lambda_matrix import Transition

MAX_VISITS = 10 ** 7
MAX_NODES = 10 ** 9

KMatrix = tuple[tuple[int, ...], ...]


def count_weak_compositions(n: int, N: int) -> int:
    """Number of ways to write ``n`` as an ordered sum of ``N`` non-negative parts."""
    if n < 0 or N < 1:
        raise ValueError("need n >= 0 and N >= 1")
    return math.comb(n + N - 1, n)


def _row_fillings(total: int, caps: list[int], j: int, acc: list[int]):
    """Compositions of ``total`` into ``acc[j:]`` bounded by ``caps``, in lex order."""
    if j == len(caps) - 1:
        if total <= caps[j]:
            acc[j] = total
            yield acc
        return
    rest = sum(caps[j + 1:])
    lo = max(0, total - rest)
    for v in range(lo, min(total, caps[j]) + 1):
        acc[j] = v
        yield from _row_fillings(total - v, caps, j + 1, acc)


def enumerate_k(
    t: Transition,
    visitor: Optional[Callable[[KMatrix], None]] = None,
    max_visits: int = MAX_VISITS,
    max_nodes: int = MAX_NODES,
) -> int:
    """Call ``visitor`` once per valid K matrix; return how many there are.

    Rows are filled one at a time against the remaining column capacities.
    Every partial row is completable (capacity bounds are tight) and the last
    row is forced, so no dead branches are explored.
    """
    N = t.N
    rows_target = list(t.n_in)
    caps = list(t.m_out)
    rows: list[tuple[int, ...]] = []
    visits = 0
    nodes = 0

    def rec(i: int) -> None:
        nonlocal visits, nodes
        if i == N - 1:
            # remaining capacity must equal the last row target, guaranteed by totals
            rows.append(tuple(caps))
            visits += 1
            if visits > max_visits:
                raise BudgetExceededError(f"more than {max_visits} valid K matrices")
            if visitor is not None:
                visitor(tuple(rows))
            rows.pop()
            return
        acc = [0] * N
        for fill in _row_fillings(rows_target[i], caps, 0, acc):
            nodes += 1
            if nodes > max_nodes:
                raise BudgetExceededError(f"more than {max_nodes} search nodes")
            row = tuple(fill)
            for j in range(N):
                caps[j] -= row[j]
            rows.append(row)
            rec(i + 1)
            rows.pop()
            for j in range(N):
                caps[j] += row[j]

    rec(0)
    return visits


def enumerate_k_bruteforce(t: Transition) -> list[KMatrix]:
    """Product of per-row compositions filtered by column sums (small cases only)."""
    import itertools

    N = t.N
    per_row = []
    for ni in t.n_in:
        per_row.append(
            [tuple(c) for c in itertools.product(range(ni + 1), repeat=N) if sum(c) == ni]
        )
    out = []
    for K in itertools.product(*per_row):
        if all(sum(K[i][j] for i in range(N)) == t.m_out[j] for j in range(N)):
            out.append(tuple(K))
    return out


def k_exponent(K: Sequence[Sequence[int]], N: Optional[int] = None) -> int:
    """``sum_{ij} i j k_ij mod N`` with 1-based i, j."""
    if N is None:
        N = len(K)
    s = 0
    for i, row in enumerate(K, 1):
        for j, k in enumerate(row, 1):
            s += i * j * k
    return s % N


def k_coefficient(K: Sequence[Sequence[int]]) -> Fraction:
    return Fraction(1, math.prod(math.factorial(k) for row in K for k in row))


def _histograms(t: Transition, max_visits: int, max_nodes: int) -> tuple[dict[int, list[int]], int]:
    """``{prod k_ij! : counts per exponent}`` and the number of valid K."""
    N = t.N
    hist: dict[int, list[int]] = defaultdict(lambda: [0] * N)
    fact = [math.factorial(k) for k in range(t.n + 1)]
    weights = [[(i * j) % N for j in range(1, N + 1)] for i in range(1, N + 1)]

    def visit(K: KMatrix) -> None:
        d = 1
        e = 0
        for i, row in enumerate(K):
            w = weights[i]
            for j, k in enumerate(row):
                if k:
                    d *= fact[k]
                    e += w[j] * k
        hist[d][e % N] += 1

    total = enumerate_k(t, visit, max_visits, max_nodes)
    return dict(hist), total


def amplitude_by_ksum(
    t: Transition, max_visits: int = MAX_VISITS, max_nodes: int = MAX_NODES
) -> CycloPoly:
    """``sum_K w^(IJ.K) / prod k_ij!`` over all valid K."""
    hist, _ = _histograms(t, max_visits, max_nodes)
    out = CycloPoly.zero(t.N)
    for d, counts in hist.items():
        out = out + CycloPoly.from_counts(t.N, counts, Fraction(1, d))
    return out


def ksum_to_perm_factor(t: Transition) -> tuple[int, int]:
    """``(r, p)`` with ``Perm(Lambda) = r * w^p * amplitude_by_ksum(t)``.

    Expanding ``prod_i (sum_j S_ij a_j^+)^(n_i)`` multinomially gives
    ``prod n_i!`` in front of each K term, and projecting onto the output Fock
    state contributes ``prod m_j!``.  The K exponent uses 1-based ``i j`` while
    S_N uses ``(i-1)(j-1)``; the difference ``i j - (i-1)(j-1) = i + j - 1``
    sums to the global phase below.
    """
    r = math.prod(math.factorial(k) for k in t.n_in + t.m_out)
    p = (t.n - sum(i * k for i, k in enumerate(t.n_in, 1))
         - sum(j * k for j, k in enumerate(t.m_out, 1))) % t.N
    return r, p


def ksum_as_perm(t: Transition, ksum: Optional[CycloPoly] = None) -> CycloPoly:
    """The K-sum rescaled onto the same footing as ``Perm(Lambda)``."""
    if ksum is None:
        ksum = amplitude_by_ksum(t)
    r, p = ksum_to_perm_factor(t)
    return ksum.scale(r).rotate(p)


@dataclass
class CoefficientGroup:
    coeff: Fraction
    counts: list[int]

    @property
    def size(self) -> int:
        return sum(self.counts)

    def total(self, N: int) -> CycloPoly:
        return CycloPoly.from_counts(N, self.counts, self.coeff)

    def is_zero(self, N: int) -> bool:
        return self.total(N).is_zero()


@dataclass
class GroupReport:
    """K-sum contributions grouped by their rational coefficient, largest first."""

    transition: Transition
    valid_count: int
    groups: list[CoefficientGroup] = field(default_factory=list)

    @property
    def N(self) -> int:
        return self.transition.N

    def group(self, coeff) -> CoefficientGroup:
        c = Fraction(coeff)
        for g in self.groups:
            if g.coeff == c:
                return g
        raise KeyError(coeff)

    def coefficients_at(self, p: int) -> dict[Fraction, int]:
        """``{coefficient: count}`` for the K matrices with exponent ``p``."""
        return {g.coeff: g.counts[p] for g in self.groups if g.counts[p]}

    @property
    def total(self) -> CycloPoly:
        out = CycloPoly.zero(self.N)
        for g in self.groups:
            out = out + g.total(self.N)
        return out

    @property
    def all_groups_zero(self) -> bool:
        return all(g.is_zero(self.N) for g in self.groups)

    def to_json(self) -> dict:
        t = self.transition
        return {
            "transition": {"N": t.N, "in": list(t.n_in), "out": list(t.m_out)},
            "valid_count": self.valid_count,
            "groups": [
                {
                    "coeff": str(g.coeff),
                    "counts": list(g.counts),
                    "sum": g.total(self.N).to_text(),
                    "is_zero": g.is_zero(self.N),
                }
                for g in self.groups
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["coefficient", "p", "count"])
        for g in self.groups:
            for p, k in enumerate(g.counts):
                if k:
                    w.writerow([str(g.coeff), p, k])
        return buf.getvalue()


def group_analysis(
    t: Transition, max_visits: int = MAX_VISITS, max_nodes: int = MAX_NODES
) -> GroupReport:
    hist, total = _histograms(t, max_visits, max_nodes)
    groups = [CoefficientGroup(Fraction(1, d), list(c)) for d, c in sorted(hist.items())]
    return GroupReport(t, total, groups)


# JKN estimate --------------------------------------------------------------

def _gbinom(a, k: int):
    """``binom(a + k - 1, k)`` for real ``a`` via Gamma functions."""
    return mpmath.gamma(a + k) / (mpmath.gamma(a) * mpmath.factorial(k))


def _jkn_raw(rows: Sequence[int], cols: Sequence[int]) -> mpmath.mpf:
    N = len(rows)
    n = sum(rows)
    c2 = sum(c * c for c in cols)
    if c2 == n:
        raise DegenerateEstimateError(
            "shape parameter undefined: every column margin is 0 or 1"
        )
    n_ = mpmath.mpf(n)
    alpha = (n_ * n_ - n_ + (n_ * n_ - c2) / N) / (c2 - n_)
    val = 1 / _gbinom(N * alpha, n)
    for r in rows:
        val *= _gbinom(alpha, r)
    for c in cols:
        val *= _gbinom(mpmath.mpf(N), c)
    return val


def _round_half_away(x) -> int:
    f = mpmath.floor(abs(x) + mpmath.mpf("0.5"))
    return int(f) if x >= 0 else -int(f)


@dataclass(frozen=True)
class JKNEstimate:
    omega_nm: int
    omega_mn: int
    omega_sym: int
    raw_nm: float
    raw_mn: float

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.omega_nm, self.omega_mn, self.omega_sym)


def jkn_estimate(t: Transition, dps: int = 50) -> JKNEstimate:
    """Closed-form estimate of the number of valid K matrices.

    ``Omega(r, c) = prod_i binom(r_i+a-1, r_i) prod_j binom(c_j+N-1, c_j) / binom(n+N a-1, n)``
    with ``a = (n^2 - n + (n^2 - sum c_j^2)/N) / (sum c_j^2 - n)``.  It is
    evaluated once with rows = input and once with the roles swapped; the
    symmetric value rounds the mean of the two unrounded estimates.
    """
    with mpmath.workdps(dps):
        a = _jkn_raw(t.n_in, t.m_out)
        b = _jkn_raw(t.m_out, t.n_in)
        return JKNEstimate(
            _round_half_away(a), _round_half_away(b), _round_half_away((a + b) / 2), float(a), float(b)
        )
