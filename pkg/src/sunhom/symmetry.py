"""Symmetry constraint for coincident outputs and the scans built on it.

For an output with ``m = n/N`` photons in every port, scaling Lambda by the
diagonal phases ``D_L``, ``D_R`` multiplies its permanent by ``w^p_sym``,
while a row-block relabelling shows the same product equals
``(-1)^((N-1) m)`` times the permanent.  When the two factors differ the
permanent must vanish.  The verdict needs only the occupation numbers.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .bs_core import ExponentMatrix
from .cyclo import CycloPoly, _check_order
from .errors import NotCoincidentError, ResourceGuardError, VerificationError
from .lambda_matrix import Transition, build_lambda, build_lambda_prime, lambda_row_modes
from .permanent import RYSER_LIMIT, permanent_ryser


class Status(str, enum.Enum):
    PROVEN_ZERO = "ProvenZero"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Verdict:
    p_sym: int
    p_tilde: int
    m: int
    sign: int
    status: Status

    @property
    def proven_zero(self) -> bool:
        return self.status is Status.PROVEN_ZERO

    def to_json(self) -> dict:
        return {
            "p_sym": self.p_sym,
            "p_tilde": self.p_tilde,
            "m": self.m,
            "sign": self.sign,
            "status": self.status.value,
        }


def _require_coincident(t: Transition) -> int:
    if not t.is_coincident:
        raise NotCoincidentError(f"output {t.m_out} is not the coincident state |n/N>^N")
    return t.n // t.N


def p_sym(t: Transition) -> int:
    """``Mod[sum_i i (n_i + m_i) - 2n, N]`` with 1-based ``i``."""
    s = sum(i * (a + b) for i, (a, b) in enumerate(zip(t.n_in, t.m_out), 1))
    return (s - 2 * t.n) % t.N


def p_tilde(t: Transition) -> int:
    """``Mod[sum_i i n_i, N]``; defined for coincident outputs only."""
    _require_coincident(t)
    return sum(i * a for i, a in enumerate(t.n_in, 1)) % t.N


def verdict(t: Transition) -> Verdict:
    m = _require_coincident(t)
    N = t.N
    ps = p_sym(t)
    pt = p_tilde(t)
    sign = -1 if ((N - 1) * m) % 2 else 1
    # w^ps equals sign iff ps == 0 (sign +1) or ps == N/2 (sign -1, N even)
    full = ps != 0 if sign == 1 else 2 * ps != N
    reduced = pt != 0
    if full != reduced:
        raise VerificationError(
            f"verdict routes disagree for {t}: p_sym={ps}, sign={sign}, p_tilde={pt}"
        )
    return Verdict(ps, pt, m, sign, Status.PROVEN_ZERO if full else Status.INCONCLUSIVE)


@dataclass(frozen=True)
class LambdaTriple:
    lam: ExponentMatrix
    lam1: ExponentMatrix
    lam2: ExponentMatrix
    lam3: ExponentMatrix

    @property
    def check(self) -> bool:
        return self.lam3 == self.lam


def procedure_lambda_triple(t: Transition) -> LambdaTriple:
    """``Lambda' -> Lambda'' -> Lambda'''``.

    Row block ``i`` of Lambda' is multiplied by ``w^(N+1-i)``, then the rows
    are rotated down by ``m`` so the last block cycles to the top.
    """
    m = _require_coincident(t)
    N = t.N
    lam = build_lambda(t)
    lam1 = build_lambda_prime(t)
    lam2 = lam1.shift_rows([N - i for i in lambda_row_modes(t)])
    lam3 = lam2.rotate_rows(m)
    return LambdaTriple(lam, lam1, lam2, lam3)


def diagonal_gehom_zero(N: int, m: int) -> bool:
    """Predicted zero for ``|m>^N -> |m>^N``: N even and m odd."""
    if N < 2 or m < 1:
        raise ValueError("need N >= 2 and m >= 1")
    return N % 2 == 0 and m % 2 == 1


def all_odd_zero_applies(t: Transition) -> bool:
    """``N = 2 N'`` with ``N'`` odd and every input occupation odd."""
    _require_coincident(t)
    N = t.N
    return N % 2 == 0 and (N // 2) % 2 == 1 and all(k % 2 for k in t.n_in)


def cnl_transition(N: int, k: int) -> Transition:
    """``|N k, 1, ..., 1, 2> -> |k+1>^N``."""
    if N < 3:
        raise ValueError("the family needs N >= 3")
    if k < 0:
        raise ValueError("k must be non-negative")
    return Transition(N, (N * k,) + (1,) * (N - 2) + (2,), (k + 1,) * N)


@dataclass(frozen=True)
class CNLEntry:
    k: int
    transition: Transition
    verdict: Verdict
    exact_zero: Optional[bool]


def cnl_family(N: int, k_max: int, confirm_exact: bool = True,
               limit: int = RYSER_LIMIT) -> list[CNLEntry]:
    """Family whose coincident projections are all zero: ``p_tilde = (N+1)(N-2)/2 mod N``."""
    _check_order(N)
    if N < 3:
        raise ValueError("the family needs N >= 3")
    out = []
    for k in range(k_max + 1):
        t = cnl_transition(N, k)
        v = verdict(t)
        z = None
        if confirm_exact:
            try:
                z = permanent_ryser(build_lambda(t), limit).is_zero()
            except ResourceGuardError:
                z = None
        out.append(CNLEntry(k, t, v, z))
    return out


# scans ---------------------------------------------------------------------

def sorted_inputs(N: int, n: int) -> Iterator[tuple[int, ...]]:
    """Non-decreasing length-N vectors summing to n, in lexicographic order."""

    def rec(rem: int, slots: int, lo: int):
        if slots == 1:
            if rem >= lo:
                yield (rem,)
            return
        for a in range(lo, rem // slots + 1):
            for tail in rec(rem - a, slots - 1, a):
                yield (a,) + tail

    yield from rec(n, N, 0)


@dataclass(frozen=True)
class ScanRow:
    input: tuple[int, ...]
    amplitude_zero: bool
    verdict: Verdict
    delta_perm_nonzero: bool
    perm: CycloPoly
    perm_prime: CycloPoly
    procedure_ok: bool

    def csv_fields(self) -> list:
        v = self.verdict
        return [
            " ".join(map(str, self.input)),
            int(self.amplitude_zero),
            v.p_sym,
            v.p_tilde,
            v.sign,
            v.status.value,
            int(self.delta_perm_nonzero),
        ]


def scan_row(N: int, inp: Sequence[int], limit: int = RYSER_LIMIT) -> ScanRow:
    """Exact analysis of one coincident transition, with the identities checked."""
    n = sum(inp)
    t = Transition(N, tuple(inp), (n // N,) * N)
    v = verdict(t)
    trip = procedure_lambda_triple(t)
    A = permanent_ryser(trip.lam, limit)
    Ap = permanent_ryser(trip.lam1, limit)
    if Ap != A.rotate(v.p_sym):
        raise VerificationError(f"diagonal scaling identity fails for {t}")
    if not (Ap - A.scale(v.sign)).is_zero():
        raise VerificationError(f"row-relabelling identity fails for {t}")
    z = A.is_zero()
    if v.proven_zero and not z:
        raise VerificationError(f"constraint claims zero but amplitude is nonzero for {t}")
    # compared in Z[w]/(w^N - 1), before reduction by the cyclotomic polynomial
    return ScanRow(tuple(inp), z, v, Ap != A, A, Ap, trip.check)


def _scan_worker(args) -> ScanRow:
    return scan_row(*args)


@dataclass
class ScanSummary:
    N: int
    n: int
    zero: int = 0
    nonzero: int = 0
    p_sym_zero: set[int] = field(default_factory=set)
    p_sym_nonzero: set[int] = field(default_factory=set)
    delta_perm_nonzero: int = 0
    inconclusive_zero: list[tuple[int, ...]] = field(default_factory=list)
    partial: bool = False
    scanned: int = 0
    total_inputs: int = 0

    def add(self, row: ScanRow) -> None:
        self.scanned += 1
        if row.amplitude_zero:
            self.zero += 1
            self.p_sym_zero.add(row.verdict.p_sym)
            if not row.verdict.proven_zero:
                self.inconclusive_zero.append(row.input)
        else:
            self.nonzero += 1
            self.p_sym_nonzero.add(row.verdict.p_sym)
        self.delta_perm_nonzero += row.delta_perm_nonzero

    @property
    def counts(self) -> tuple[int, int]:
        return (self.zero, self.nonzero)

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "n": self.n,
            "inputs": self.total_inputs,
            "scanned": self.scanned,
            "partial": self.partial,
            "A_zero": self.zero,
            "A_nonzero": self.nonzero,
            "p_sym_A_zero": sorted(self.p_sym_zero),
            "p_sym_A_nonzero": sorted(self.p_sym_nonzero),
            "delta_perm_nonzero": self.delta_perm_nonzero,
            "inconclusive_but_zero": [list(x) for x in self.inconclusive_zero],
        }


@dataclass
class ScanResult:
    rows: list[ScanRow]
    summary: ScanSummary

    @property
    def zero_inputs(self) -> list[tuple[int, ...]]:
        return [r.input for r in self.rows if r.amplitude_zero]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["input", "amplitude_zero", "p_sym", "p_tilde", "sign", "status",
                    "delta_perm_nonzero"])
        for r in self.rows:
            w.writerow(r.csv_fields())
        if self.summary.partial:
            w.writerow(["*partial*", "", "", "", "", "", ""])
        return buf.getvalue()

    def summary_json(self) -> str:
        return json.dumps(self.summary.to_json(), indent=2)


def default_jobs() -> int:
    env = os.environ.get("SUNHOM_JOBS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def scan_gehom(N: int, n: int, max_inputs: Optional[int] = None,
               limit: int = RYSER_LIMIT, jobs: int = 1) -> ScanResult:
    """All sorted inputs of ``n`` photons on N ports against the coincident output.

    Stops early (and flags ``partial``) once ``max_inputs`` rows are done or a
    permanent exceeds ``limit``.  Row order is lexicographic regardless of
    ``jobs``.
    """
    _check_order(N)
    if n < 1 or n % N:
        raise ValueError(f"n={n} must be a positive multiple of N={N}")
    inputs = list(sorted_inputs(N, n))
    summary = ScanSummary(N, n, total_inputs=len(inputs))
    todo = inputs if max_inputs is None else inputs[:max_inputs]
    if len(todo) < len(inputs):
        summary.partial = True
    rows: list[ScanRow] = []
    try:
        if jobs > 1 and len(todo) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                for row in ex.map(_scan_worker, [(N, x, limit) for x in todo]):
                    rows.append(row)
        else:
            for x in todo:
                rows.append(scan_row(N, x, limit))
    except ResourceGuardError:
        summary.partial = True
    for r in rows:
        summary.add(r)
    return ScanResult(rows, summary)


AFSR_CASE_1 = Transition(12, (0, 0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 4), (1,) * 12)
AFSR_CASE_2 = Transition(14, (0,) * 8 + (1, 2, 2, 3, 3, 3), (1,) * 14)
