"""The symmetric N-port beam splitter as a matrix of root-of-unity exponents."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .cyclo import CycloPoly, _check_order


@dataclass(frozen=True)
class ExponentMatrix:
    """Rectangular grid of exponents; entry ``(i, j)`` stands for ``w**entries[i][j]``.

    The ``1/sqrt(N)`` normalisation of the beam splitter is never stored here.
    """

    order: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        _check_order(self.order)
        rows = tuple(tuple(int(e) % self.order for e in row) for row in self.entries)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged exponent matrix")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, order: int, rows: Sequence[Sequence[int]]) -> "ExponentMatrix":
        return cls(order, tuple(tuple(r) for r in rows))

    @property
    def shape(self) -> tuple[int, int]:
        r = len(self.entries)
        return (r, len(self.entries[0]) if r else 0)

    @property
    def is_square(self) -> bool:
        r, c = self.shape
        return r == c

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "ExponentMatrix":
        return ExponentMatrix(self.order, tuple(zip(*self.entries)))

    def shift_rows(self, shifts: Sequence[int]) -> "ExponentMatrix":
        """Multiply row ``i`` by ``w**shifts[i]``."""
        return ExponentMatrix(
            self.order, tuple(tuple(e + s for e in row) for row, s in zip(self.entries, shifts))
        )

    def shift_columns(self, shifts: Sequence[int]) -> "ExponentMatrix":
        return ExponentMatrix(
            self.order, tuple(tuple(e + s for e, s in zip(row, shifts)) for row in self.entries)
        )

    def rotate_rows(self, k: int) -> "ExponentMatrix":
        """Cyclic downward rotation by ``k`` rows (row ``r`` moves to ``r + k``)."""
        n = len(self.entries)
        if n == 0:
            return self
        k %= n
        return ExponentMatrix(self.order, self.entries[n - k:] + self.entries[: n - k])

    def to_json(self) -> dict:
        return {"N": self.order, "entries": [list(r) for r in self.entries]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def build_sn(N: int) -> ExponentMatrix:
    """Exponents of the unnormalised DFT beam splitter: ``(i-1)(j-1) mod N``."""
    _check_order(N)
    return ExponentMatrix(N, tuple(tuple((i * j) % N for j in range(N)) for i in range(N)))


def fsr(N: int) -> CycloPoly:
    """``1 + w + ... + w^(N-1)``, zero for every N > 1."""
    _check_order(N)
    return CycloPoly(N, [1] * N)


def afsr(N: int, q: int) -> CycloPoly:
    """Alternating sum ``sum_{i<N/2^q} (-1)^i (w^(2^(q-1)))^i``.

    The geometric sum equals ``(1 - (-x)^L) / (1 + x)`` with ``x = w^(2^(q-1))``
    and ``L = N / 2^q``; since ``x^L = -1`` it vanishes exactly when ``L`` is odd
    and greater than one (``L = 1`` leaves the single term ``1``).
    """
    _check_order(N)
    if q < 1:
        raise ValueError("q must be at least 1")
    if N % (2 ** q):
        raise ValueError(f"2^{q} does not divide N={N}")
    step = 2 ** (q - 1)
    coeffs = [0] * N
    for i in range(N // 2 ** q):
        coeffs[(i * step) % N] += -1 if i % 2 else 1
    return CycloPoly(N, coeffs)
