"""Permanents of exponent matrices over Z[w], and the transition amplitudes built on them.

``permanent_ryser`` packs each row sum, a polynomial in ``w`` with small
non-negative integer coefficients, into one Python integer with ``B`` bits per
coefficient.  With ``x = 2^B`` and modulus ``2^(B*N) - 1`` we get ``x^N = 1`` for
free, so a product of row sums is a plain big-integer multiplication followed by
one modular reduction.  ``B`` is chosen large enough that no coefficient of any
intermediate or accumulated value can carry into its neighbour.

Identical columns are merged: the inclusion-exclusion sum then runs over the
number ``s_c`` of copies taken from each column class, weighted by
``binom(mu_c, s_c)``, visited in reflected mixed-radix Gray order so that each
step changes one row-sum term.  Identical rows are raised to their multiplicity
with ``pow``.  For the replicated matrices of multiphoton transitions this
shrinks ``2^n`` subsets to ``prod(n_j + 1)`` steps.
"""

from __future__ import annotations

import itertools
import math
from typing import Optional, Sequence

from .bs_core import ExponentMatrix
from .cyclo import CycloPoly
from .errors import ResourceGuardError
from .lambda_matrix import Transition, build_lambda

NAIVE_LIMIT = 9
RYSER_LIMIT = 20


def permanent_naive(M: ExponentMatrix, limit: int = NAIVE_LIMIT) -> CycloPoly:
    """Sum over all permutations; every term is a single power of ``w``."""
    n, c = M.shape
    if n != c:
        raise ValueError(f"permanent needs a square matrix, got {n}x{c}")
    if n > limit:
        raise ResourceGuardError(
            f"naive permanent refused for side {n} > {limit}; use permanent_ryser"
        )
    N = M.order
    counts = [0] * N
    rows = M.entries
    for sigma in itertools.permutations(range(n)):
        e = 0
        for i, j in enumerate(sigma):
            e += rows[i][j]
        counts[e % N] += 1
    return CycloPoly(N, counts)


def _classes(items: Sequence[tuple[int, ...]]) -> tuple[list[tuple[int, ...]], list[int]]:
    """Distinct items in first-seen order together with their multiplicities."""
    index: dict[tuple[int, ...], int] = {}
    reps: list[tuple[int, ...]] = []
    mult: list[int] = []
    for it in items:
        k = index.get(it)
        if k is None:
            index[it] = len(reps)
            reps.append(it)
            mult.append(1)
        else:
            mult[k] += 1
    return reps, mult


def ryser_steps(M: ExponentMatrix) -> int:
    """Number of inclusion-exclusion terms visited by ``permanent_ryser``."""
    _, mult = _classes([M.column(j) for j in range(M.shape[1])])
    return math.prod(m + 1 for m in mult)


def permanent_ryser(M: ExponentMatrix, limit: int = RYSER_LIMIT) -> CycloPoly:
    """Ryser inclusion-exclusion with Gray-ordered updates, exact over Z[w].

    ``limit`` bounds the work: at most ``2**limit`` inclusion-exclusion terms
    (for a matrix with distinct columns this is the usual side limit).
    """
    n, c = M.shape
    if n != c:
        raise ValueError(f"permanent needs a square matrix, got {n}x{c}")
    N = M.order
    if n == 0:
        return CycloPoly.constant(N, 1)

    col_reps, col_mult = _classes([M.column(j) for j in range(n)])
    steps = math.prod(m + 1 for m in col_mult)
    if steps > 2 ** limit:
        raise ResourceGuardError(
            f"Ryser permanent needs {steps} terms (> 2^{limit}); "
            "raise the limit or reduce the transition size"
        )
    row_reps, row_mult = _classes(list(M.entries))
    # column classes restricted to distinct rows: exps[c][r]
    row_pos = [M.entries.index(r) for r in row_reps]
    exps = [[col[i] for i in row_pos] for col in col_reps]

    # coefficient bound: accumulated sums stay below 2^n * n^n
    B = n + n * max(1, (n).bit_length()) + 8
    modulus = (1 << (B * N)) - 1
    mono = [[1 << (B * e) for e in col] for col in exps]

    K = len(col_reps)
    R = len(row_reps)
    s = [0] * K
    d = [1] * K
    rowsum = [0] * R
    weight = 1
    total = 0
    pos = 0
    neg = 0
    for _ in range(steps - 1):
        # next reflected mixed-radix Gray step: lowest digit that can move
        k = 0
        while True:
            nxt = s[k] + d[k]
            if 0 <= nxt <= col_mult[k]:
                break
            d[k] = -d[k]
            k += 1
        mu = col_mult[k]
        if d[k] > 0:
            weight = weight * (mu - s[k]) // (s[k] + 1)
            for r in range(R):
                rowsum[r] += mono[k][r]
            total += 1
        else:
            weight = weight * s[k] // (mu - s[k] + 1)
            for r in range(R):
                rowsum[r] -= mono[k][r]
            total -= 1
        s[k] = nxt

        prod = 1
        for r in range(R):
            v = rowsum[r]
            if row_mult[r] > 1:
                v = pow(v, row_mult[r], modulus)
            prod = prod * v % modulus
        if not prod:
            continue
        if (n - total) % 2:
            neg += weight * prod
        else:
            pos += weight * prod

    return CycloPoly(N, [a - b for a, b in zip(_unpack(pos % modulus, B, N), _unpack(neg % modulus, B, N))])


def _unpack(v: int, B: int, N: int) -> list[int]:
    mask = (1 << B) - 1
    out = []
    for _ in range(N):
        out.append(v & mask)
        v >>= B
    return out


def permanent(M: ExponentMatrix, limit: int = RYSER_LIMIT) -> CycloPoly:
    return permanent_ryser(M, limit)


def amplitude_unnormalized(t: Transition, limit: int = RYSER_LIMIT) -> CycloPoly:
    """``Perm(Lambda)`` over Z[w], before any factorial or ``sqrt(N)`` normalisation."""
    return permanent_ryser(build_lambda(t), limit)


def normalization(t: Transition) -> float:
    """``N^(-n/2) / sqrt(prod n_i! prod m_j!)``."""
    fact = math.prod(math.factorial(k) for k in t.n_in + t.m_out)
    return t.N ** (-t.n / 2) / math.sqrt(fact)


def amplitude_normalized(
    t: Transition, limit: int = RYSER_LIMIT, exact: Optional[CycloPoly] = None
) -> complex:
    """Physical transition amplitude as a complex double."""
    if t.n == 0:
        return 1.0 + 0j
    a = exact if exact is not None else amplitude_unnormalized(t, limit)
    if a.is_zero():
        return 0j
    return a.eval_numeric() * normalization(t)
