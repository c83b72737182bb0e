"""Independent reference implementations used only by the tests."""

from __future__ import annotations

import cmath
import itertools
import math
from typing import Sequence


def scheel_lambda(N: int, n_in: Sequence[int], m_out: Sequence[int]) -> list[list[int]]:
    """Lambda[1^m1 ... N^mN | 1^n1 ... N^nN] straight from the index lists."""
    rows = [i for i in range(1, N + 1) for _ in range(m_out[i - 1])]
    cols = [j for j in range(1, N + 1) for _ in range(n_in[j - 1])]
    return [[((r - 1) * (c - 1)) % N for c in cols] for r in rows]


def complex_permanent(A: Sequence[Sequence[complex]]) -> complex:
    n = len(A)
    total = 0j
    for sigma in itertools.permutations(range(n)):
        p = 1 + 0j
        for i, j in enumerate(sigma):
            p *= A[i][j]
        total += p
    return total


def exponent_to_complex(N: int, E: Sequence[Sequence[int]]) -> list[list[complex]]:
    w = cmath.exp(2j * math.pi / N)
    return [[w ** e for e in row] for row in E]


def fock_amplitude(N: int, n_in: Sequence[int], m_out: Sequence[int]) -> complex:
    """<m| U |n> for the normalised DFT unitary, via the Scheel matrix and a float permanent."""
    E = scheel_lambda(N, n_in, m_out)
    if not E:
        return 1.0
    A = [[z / math.sqrt(N) for z in row] for row in exponent_to_complex(N, E)]
    norm = math.prod(math.factorial(k) for k in list(n_in) + list(m_out))
    return complex_permanent(A) / math.sqrt(norm)


def k_matrices(N: int, n_in: Sequence[int], m_out: Sequence[int]) -> list[tuple]:
    """Filter the full product of row compositions by column sums."""
    per_row = [
        [c for c in itertools.product(range(r + 1), repeat=N) if sum(c) == r] for r in n_in
    ]
    return [
        K for K in itertools.product(*per_row)
        if all(sum(K[i][j] for i in range(N)) == m_out[j] for j in range(N))
    ]


def jkn_float(rows: Sequence[int], cols: Sequence[int]) -> float:
    """Float JKN estimate with log-Gamma (no mpmath)."""
    N = len(rows)
    n = sum(rows)
    c2 = sum(c * c for c in cols)
    a = (n * n - n + (n * n - c2) / N) / (c2 - n)

    def lbinom(x: float, k: int) -> float:
        return math.lgamma(x + k) - math.lgamma(x) - math.lgamma(k + 1)

    s = -lbinom(N * a, n) + sum(lbinom(a, r) for r in rows) + sum(lbinom(N, c) for c in cols)
    return math.exp(s)


def sorted_partitions(N: int, n: int) -> list[tuple[int, ...]]:
    return sorted({tuple(sorted(c)) for c in itertools.product(range(n + 1), repeat=N) if sum(c) == n})
