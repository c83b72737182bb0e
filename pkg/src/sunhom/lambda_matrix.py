"""Transitions and the replicated matrices whose permanents give their amplitudes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bs_core import ExponentMatrix, build_sn
from .cyclo import _check_order
from .errors import TransitionError


@dataclass(frozen=True)
class Transition:
    """Input occupations ``n_in`` scattered to output occupations ``m_out`` on N ports."""

    N: int
    n_in: tuple[int, ...]
    m_out: tuple[int, ...]

    def __post_init__(self):
        _check_order(self.N)
        n_in = tuple(int(x) for x in self.n_in)
        m_out = tuple(int(x) for x in self.m_out)
        if len(n_in) != self.N or len(m_out) != self.N:
            raise TransitionError(
                f"occupation vectors must have length N={self.N}, got {len(n_in)} and {len(m_out)}"
            )
        if any(x < 0 for x in n_in + m_out):
            raise TransitionError("occupations must be non-negative")
        if sum(n_in) != sum(m_out):
            raise TransitionError(
                f"photon number mismatch: {sum(n_in)} in, {sum(m_out)} out"
            )
        object.__setattr__(self, "n_in", n_in)
        object.__setattr__(self, "m_out", m_out)

    @classmethod
    def of(cls, n_in: Sequence[int], m_out: Sequence[int]) -> "Transition":
        return cls(len(n_in), tuple(n_in), tuple(m_out))

    @property
    def n(self) -> int:
        return sum(self.n_in)

    @property
    def is_coincident(self) -> bool:
        n = self.n
        return n % self.N == 0 and all(m == n // self.N for m in self.m_out)

    def swapped(self) -> "Transition":
        return Transition(self.N, self.m_out, self.n_in)

    def __str__(self) -> str:
        a = ",".join(map(str, self.n_in))
        b = ",".join(map(str, self.m_out))
        return f"N={self.N}: |{a}> -> |{b}>"


def _require_photons(t: Transition) -> None:
    if t.n == 0:
        raise TransitionError("empty transition (no photons)")


def _blocks(occ: Sequence[int]) -> list[int]:
    """0-based mode index of every replicated row/column, zero-occupancy modes skipped."""
    return [i for i, k in enumerate(occ) for _ in range(k)]


def build_lambda(t: Transition) -> ExponentMatrix:
    """n x n matrix: row block ``i`` is row ``i`` of S_N repeated ``m_i`` times,
    then column ``j`` is repeated ``n_j`` times.

    Two-step replication in the row-first order; the orientation puts output
    modes on rows so that row ``i`` of S_N appears ``m_i`` times.
    """
    _require_photons(t)
    S = build_sn(t.N).entries
    rows = [S[i] for i in _blocks(t.m_out)]
    cols = _blocks(t.n_in)
    return ExponentMatrix(t.N, tuple(tuple(r[j] for j in cols) for r in rows))


def lambda_row_modes(t: Transition) -> list[int]:
    return _blocks(t.m_out)


def lambda_col_modes(t: Transition) -> list[int]:
    return _blocks(t.n_in)


def build_lambda_prime(t: Transition) -> ExponentMatrix:
    """``D_L Lambda D_R``: every row of block ``i`` gains ``i-1`` and every column of
    block ``j`` gains ``j-1`` (1-based mode labels), modulo N."""
    lam = build_lambda(t)
    return lam.shift_rows(_blocks(t.m_out)).shift_columns(_blocks(t.n_in))
