"""Output photon-number distributions for finite superpositions of Fock inputs."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import ResourceGuardError, TransitionError
from .lambda_matrix import Transition
from .permanent import RYSER_LIMIT, amplitude_normalized

CNL_TOLERANCE = 1e-12


@dataclass(frozen=True)
class SuperpositionInput:
    """``sum_k c_k |n_k>`` on N ports."""

    N: int
    terms: tuple[tuple[complex, tuple[int, ...]], ...]
    normalized: bool = False

    def __post_init__(self):
        terms = tuple((complex(c), tuple(int(x) for x in occ)) for c, occ in self.terms)
        for _, occ in terms:
            if len(occ) != self.N:
                raise TransitionError(f"occupation {occ} does not have length N={self.N}")
            if any(x < 0 for x in occ):
                raise TransitionError("occupations must be non-negative")
        if self.normalized:
            norm = sum(abs(c) ** 2 for c, _ in terms)
            if abs(norm - 1) > 1e-9:
                raise ValueError(f"coefficients are flagged normalised but sum to {norm}")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def fock(cls, occ: Sequence[int]) -> "SuperpositionInput":
        return cls(len(occ), ((1.0, tuple(occ)),), True)

    @classmethod
    def uniform(cls, occs: Sequence[Sequence[int]]) -> "SuperpositionInput":
        c = 1 / math.sqrt(len(occs))
        return cls(len(occs[0]), tuple((c, tuple(o)) for o in occs), True)

    @classmethod
    def from_json(cls, obj: dict) -> "SuperpositionInput":
        """``{"N": 3, "terms": [{"c": [re, im] or re, "n": [...]}, ...]}``."""
        terms = []
        for term in obj["terms"]:
            c = term.get("c", 1.0)
            if isinstance(c, (list, tuple)):
                c = complex(c[0], c[1])
            terms.append((complex(c), tuple(term["n"])))
        return cls(int(obj["N"]), tuple(terms), bool(obj.get("normalized", False)))

    def totals(self) -> set[int]:
        return {sum(occ) for _, occ in self.terms}


def compositions(n: int, N: int) -> Iterator[tuple[int, ...]]:
    """All length-N non-negative vectors summing to n, lexicographically."""
    if N == 1:
        yield (n,)
        return
    for a in range(n + 1):
        for tail in compositions(n - a, N - 1):
            yield (a,) + tail


def output_distribution(
    state: SuperpositionInput, total_cap: int, limit: int = RYSER_LIMIT
) -> dict[tuple[int, ...], float]:
    """``P(m) = |sum_k c_k <m|S_N|n_k>|^2`` over every output sector reached by the input."""
    if not state.terms:
        raise ValueError("empty input state")
    totals = state.totals()
    if max(totals) > total_cap:
        raise ResourceGuardError(f"photon number {max(totals)} exceeds cap {total_cap}")
    N = state.N
    out: dict[tuple[int, ...], float] = {}
    for n in sorted(totals):
        sector = [(c, occ) for c, occ in state.terms if sum(occ) == n]
        for m in compositions(n, N):
            amp = 0j
            for c, occ in sector:
                amp += c * amplitude_normalized(Transition(N, occ, m), limit)
            out[m] = abs(amp) ** 2
    return out


def coincident_probability(state: SuperpositionInput, m: int,
                           limit: int = RYSER_LIMIT) -> float:
    """``P(m, m, ..., m)``; only the terms with ``N m`` photons contribute."""
    N = state.N
    target = (m,) * N
    amp = 0j
    for c, occ in state.terms:
        if sum(occ) == N * m:
            amp += c * amplitude_normalized(Transition(N, occ, target), limit)
    return abs(amp) ** 2


@dataclass(frozen=True)
class CNLResult:
    holds: bool
    violations: list[tuple[int, float]]


def cnl_check(state: SuperpositionInput, max_m: int, limit: int = RYSER_LIMIT) -> CNLResult:
    """Whether ``P(m, ..., m) < 1e-12`` for ``m = 1..max_m``."""
    if not state.terms:
        raise ValueError("empty input state")
    bad = []
    for m in range(1, max_m + 1):
        p = coincident_probability(state, m, limit)
        if p >= CNL_TOLERANCE:
            bad.append((m, p))
    return CNLResult(not bad, bad)


def distribution_json(dist: dict[tuple[int, ...], float]) -> str:
    return json.dumps({"outputs": [{"m": list(m), "p": p} for m, p in dist.items()]}, indent=2)


def distribution_csv(dist: dict[tuple[int, ...], float]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if not dist:
        return ""
    N = len(next(iter(dist)))
    w.writerow([f"m{i}" for i in range(1, N + 1)] + ["p"])
    for m, p in dist.items():
        w.writerow(list(m) + [repr(p)])
    return buf.getvalue()


def plot_rows(dist: dict[tuple[int, ...], float]) -> list[tuple[tuple[int, ...], float]]:
    """``(m, p)`` pairs with ``p > 0``, for an external scatter plot."""
    return [(m, p) for m, p in dist.items() if p > 0]
